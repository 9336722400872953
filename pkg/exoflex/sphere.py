#!/usr/bin/env python3

"""Spherical geometry kernel.

Points of the unit sphere S^3 are plain float64 numpy arrays of shape (4,).
Volumes of S^3 are defined up to multiples of the total volume 2*pi^2 and
are carried around as :class:`VolumeClass` objects.
"""

import logging
import math
import warnings

import numpy as np
from scipy import stats
from scipy.stats import qmc

from exoflex import errors, settings


logger = logging.getLogger(__name__)

SPHERE_VOLUME = 2 * math.pi**2


def point(*coords):
	"""Returns the unit vector along coords.

	:param coords: four coordinates, or one sequence of four
	:returns: numpy.ndarray
	"""
	if len(coords) == 1: coords = coords[0]
	vector = np.asarray(coords, dtype=float).reshape(-1)
	if vector.shape != (4,):
		raise errors.DomainError('points of S^3 need four coordinates, got {0}'.format(vector.shape[0]))
	norm = np.linalg.norm(vector)
	if norm < 1e-300:
		raise errors.DomainError('cannot normalize the zero vector')
	return vector / norm


def clamp(x, lo=-1.0, hi=1.0, band=None):
	"""Snaps x onto [lo, hi] when it is outside by less than band.
	"""
	if band is None: band = settings.default['clamp']
	x = float(x)
	if x < lo:
		if x < lo - band:
			raise errors.DomainError('value {0!r} below {1!r} beyond clamp band'.format(x, lo))
		return lo
	if x > hi:
		if x > hi + band:
			raise errors.DomainError('value {0!r} above {1!r} beyond clamp band'.format(x, hi))
		return hi
	return x


def arccos(x, band=None):
	return math.acos(clamp(x, band=band))


def sqrt(x, band=None, snap=None):
	"""Square root with clamp band; radicands below snap count as exact zeros.
	"""
	if snap is None: snap = settings.default['snap']
	x = clamp(x, lo=0.0, hi=math.inf, band=band)
	if x < snap: return 0.0
	return math.sqrt(x)


def det(c1, c2, c3, c4):
	return float(np.linalg.det(np.array([c1, c2, c3, c4], dtype=float)))


def dist(u, v):
	"""Spherical distance between two unit vectors, in [0, pi].
	"""
	return math.acos(min(1.0, max(-1.0, float(np.dot(u, v)))))


def angle(u, v, w):
	"""Angle at u of the spherical triangle uvw.
	"""
	cuv, cuw = float(np.dot(u, v)), float(np.dot(u, w))
	denominator = math.sqrt(max(0.0, (1 - cuv**2) * (1 - cuw**2)))
	if denominator < settings.default['gram']:
		raise errors.DomainError('angle at a vertex with a side of length 0 or pi')
	return arccos((float(np.dot(v, w)) - cuv * cuw) / denominator)


def triangle_area(c1, c2, c3, band=None):
	"""Area of the spherical triangle whose sides have cosines c1, c2, c3.

	:returns: float in [0, 2*pi)
	"""
	def corner(opposite, left, right):
		denominator = math.sqrt(max(0.0, (1 - left**2) * (1 - right**2)))
		if denominator < settings.default['gram']:
			raise errors.DomainError('triangle side of length 0 or pi: cosines {0!r}, {1!r}'.format(left, right))
		return arccos((opposite - left * right) / denominator, band=band)

	return corner(c1, c2, c3) + corner(c2, c3, c1) + corner(c3, c1, c2) - math.pi


def right_triangle_side(alpha, beta):
	"""Cosine of the leg opposite alpha in the triangle with hypotenuse pi/2
	and angles alpha, beta at the ends of the hypotenuse.
	"""
	ca, cb = math.cos(alpha), math.cos(beta)
	denominator = math.sqrt(max(0.0, 1 - ca**2 * cb**2))
	if denominator < settings.default['gram']:
		raise errors.DomainError('right_triangle_side undefined for alpha={0!r}, beta={1!r}'.format(alpha, beta))
	return ca * math.sin(beta) / denominator


def _face_normal(face, vectors, tol):
	matrix = np.array(vectors, dtype=float)
	_, singular, vt = np.linalg.svd(matrix)
	gram = float(np.prod(singular))
	if gram < tol: raise errors.DegenerateFaceError(face, gram)
	normal = vt[-1]
	if np.linalg.det(np.vstack([matrix, normal])) < 0: normal = -normal
	return normal


def _inward(u, v, w):
	"""Unit tangent at the edge uv pointing into the face uvw.
	"""
	q, _ = np.linalg.qr(np.column_stack([u, v]))
	n = w - q @ (q.T @ w)
	return n / np.linalg.norm(n)


def dihedral_angle(first, second, labels=('?', '?'), tol=None):
	"""Oriented dihedral angle between two positively oriented faces
	sharing an edge.

	:param first: vertex vectors (u, v, w1) of the first face in positive order
	:param second: vertex vectors of the second face in positive order; it
		contains u and v and one more vertex w2
	:returns: rotation angle from the first face to the second, in [0, 2*pi)
	"""
	if tol is None: tol = settings.default['gram']
	u, v, w1 = first
	w2 = [x for x in second if not (np.array_equal(x, u) or np.array_equal(x, v))]
	if len(w2) != 1:
		raise errors.ParameterError('faces {0} and {1} do not share exactly one edge'.format(*labels))
	m1 = _face_normal(labels[0], first, tol)
	_face_normal(labels[1], second, tol)
	n1 = _inward(u, v, w1)
	n2 = _inward(u, v, w2[0])
	return math.atan2(-float(np.dot(n2, m1)), float(np.dot(n2, n1))) % (2 * math.pi)


def oriented_dihedral_angle(oct, edge):
	"""Oriented dihedral angle of a polyhedron at one of its edges.

	:param oct: object providing `edge_faces(edge)`, returning the two
		positively oriented faces at the edge as (labels, vectors) pairs
	:type oct: exoflex.octa.Octahedron
	"""
	if isinstance(edge, str): edge = (edge[:2], edge[2:])
	(l1, f1), (l2, f2) = oct.edge_faces(edge)
	u, v = (oct[label] for label in edge)
	# rotate the first face so that it starts with the edge
	while not (np.array_equal(f1[0], u) and np.array_equal(f1[1], v)) and not (np.array_equal(f1[0], v) and np.array_equal(f1[1], u)):
		f1 = f1[1:] + f1[:1]
	return dihedral_angle(tuple(f1), tuple(f2), labels=(l1, l2))


def tangent(phi):
	"""Projective tangent of half the angle, as a unit pair (X, Y).
	"""
	return (math.sin(phi / 2), math.cos(phi / 2))


class VolumeClass():
	"""Oriented volume defined up to multiples of 2*pi^2.

	:param lifted: a real representative
	:type lifted: float
	"""
	def __init__(self, lifted):
		self.lifted = float(lifted)

	def __repr__(self):
		return 'VolumeClass({0!r})'.format(self.lifted)

	def __float__(self):
		return self.lifted

	@property
	def representative(self):
		value = self.lifted % SPHERE_VOLUME
		if value >= SPHERE_VOLUME: value = 0.0
		return value

	def distance(self, other):
		return circular_gap(self.lifted, float(other))


def wrap(x):
	"""Representative of x modulo 2*pi^2 in [-pi^2, pi^2).
	"""
	return (x + SPHERE_VOLUME / 2) % SPHERE_VOLUME - SPHERE_VOLUME / 2


def circular_gap(a, b):
	return abs(wrap(a - b))


def wrap_angle(x):
	"""Representative of an angle difference in [-pi, pi).
	"""
	return (x + math.pi) % (2 * math.pi) - math.pi


class OracleOptions():
	"""Settings of the Monte-Carlo volume oracle.

	:param points: number of sample points per tetrahedron
	:param seed: integer seed, or tuple of integers
	:param sampler: 'pseudo' or 'sobol'
	:param chunk: points handled per linear solve
	"""
	SAMPLERS = ('pseudo', 'sobol')

	def __init__(self, points=None, seed=0, sampler='pseudo', chunk=None, inside=1e-12, ledger=None):
		ledger = ledger or settings.default
		self.points = int(points if points is not None else ledger['oracle_points'])
		self.chunk = int(chunk if chunk is not None else ledger['chunk'])
		if sampler not in self.SAMPLERS:
			raise errors.ParameterError('unknown sampler: {0!r}'.format(sampler))
		if self.points < 1 or self.chunk < 1:
			raise errors.ParameterError('oracle needs positive point and chunk counts')
		self.seed = tuple(seed) if isinstance(seed, (tuple, list)) else (int(seed),)
		self.sampler = sampler
		self.inside = inside

	def __repr__(self):
		return 'OracleOptions(points={0}, seed={1!r}, sampler={2!r})'.format(self.points, self.seed, self.sampler)

	def derive(self, *keys):
		"""Options for one independent subtask, seeded from (seed, keys).
		"""
		child = OracleOptions(points=self.points, seed=self.seed + tuple(int(k) for k in keys),
							sampler=self.sampler, chunk=self.chunk, inside=self.inside)
		return child


def _to_sphere(gaussian):
	return gaussian / np.linalg.norm(gaussian, axis=1)[:, None]


def sample_points(opts):
	"""Yields chunks of uniformly distributed points of S^3.

	The stream is a pure function of opts, so any split of the chunks
	between workers reproduces the serial estimate.
	"""
	if opts.sampler == 'pseudo':
		left, index = opts.points, 0
		while left > 0:
			size = min(opts.chunk, left)
			rng = np.random.default_rng(list(opts.seed) + [index])
			yield _to_sphere(rng.standard_normal((size, 4)))
			left -= size
			index += 1
		return
	total = 1 << max(0, (opts.points - 1).bit_length())
	if total != opts.points:
		warnings.warn('sobol point count rounded up from {0} to {1}'.format(opts.points, total))
	chunk = min(1 << max(0, opts.chunk.bit_length() - 1), total)
	engine = qmc.Sobol(d=4, scramble=True, seed=np.random.default_rng(list(opts.seed)))
	for _ in range(total // chunk):
		uniform = np.clip(engine.random(chunk), 1e-16, 1 - 1e-16)
		yield _to_sphere(stats.norm.ppf(uniform))


def tetra_volume_oriented(c1, c2, c3, c4, opts=None):
	"""Oriented volume of the spherical tetrahedron c1c2c3c4, estimated
	by sampling.

	:returns: (VolumeClass, standard error)
	"""
	opts = opts or OracleOptions()
	cone = np.column_stack([c1, c2, c3, c4]).astype(float)
	determinant = float(np.linalg.det(cone))
	if abs(determinant) < settings.default['gram']: return VolumeClass(0.0), 0.0
	inside, total = 0, 0
	for chunk in sample_points(opts):
		coefficients = np.linalg.solve(cone, chunk.T)
		inside += int(np.count_nonzero(np.all(coefficients >= -opts.inside, axis=0)))
		total += chunk.shape[0]
	fraction = inside / total
	sign = 1.0 if determinant > 0 else -1.0
	stderr = SPHERE_VOLUME * math.sqrt(fraction * (1 - fraction) / total)
	logger.debug('tetrahedron: %d of %d points inside', inside, total)
	return VolumeClass(sign * fraction * SPHERE_VOLUME), stderr
