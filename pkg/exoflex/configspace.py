#!/usr/bin/env python3

"""Configuration space of an exotic family.

With delta1 = +1 fixed, the configuration space consists of two closed
curves, one for eps1 = +1 and one for eps1 = -1. Along each of them theta
sweeps [theta_min, theta_max] four times; delta2 changes sign at theta_max
and eps2 at theta_min.
"""

import logging
import math

import numpy as np

from exoflex import errors, octa, settings, sphere


logger = logging.getLogger(__name__)

COMPONENTS = {'plus': 1, 'minus': -1}

# (delta2, eps2) on the four legs, and whether the leg runs up in theta
LEGS = (((1, 1), True), ((-1, 1), False), ((-1, -1), True), ((1, -1), False))


def _product_root(a, b, ledger):
	return sphere.sqrt(1 - a, band=ledger['clamp'], snap=ledger['snap']) * sphere.sqrt(1 - b, band=ledger['clamp'], snap=ledger['snap'])


def y_of_state(p, s, ledger=None):
	"""Cosine of the diagonal a1b1 at state s.
	"""
	ledger = ledger or settings.default
	c2 = math.cos(s.theta)**2
	root = _product_root(p.p1**2 / c2, p.p2**2 / c2, ledger)
	return p.p1 * p.p2 / c2 + s.delta1 * s.delta2 * root


def x_of_theta(theta):
	return 1 / math.cos(theta)**2


def y_bounds(p):
	"""Smallest and largest value of y over the configuration space.
	"""
	octa.require_valid(p)
	d = 1 - p.q2**2
	root = math.sqrt(max(0.0, (d - p.p1**2) * (d - p.p2**2)))
	return (p.p1 * p.p2 - root) / d, (p.p1 * p.p2 + root) / d


def hyperbola_residual(p, x, y):
	return y**2 - 2 * p.p1 * p.p2 * x * y + (p.p1**2 + p.p2**2) * x - 1


class DiagonalCosines():
	"""Cosines of the three diagonals a1b1, a2b2, a3b3.

	:param chirality: sign of det(b1, a1, a2, a3), 0 when unknown
	"""
	def __init__(self, y1, y2, y3, chirality=0):
		self.y1, self.y2, self.y3 = float(y1), float(y2), float(y3)
		self.chirality = int(chirality)

	def __iter__(self):
		return iter((self.y1, self.y2, self.y3))

	def __repr__(self):
		return 'DiagonalCosines({0!r}, {1!r}, {2!r}, chirality={3})'.format(self.y1, self.y2, self.y3, self.chirality)

	@property
	def x(self):
		return 2 / (1 + self.y3)


def diagonals(o):
	chirality = np.sign(sphere.det(o['b1'], o['a1'], o['a2'], o['a3']))
	return DiagonalCosines(np.dot(o['a1'], o['b1']), np.dot(o['a2'], o['b2']), np.dot(o['a3'], o['b3']), chirality)


def diagonal_closed_forms(p, s, ledger=None):
	ledger = ledger or settings.default
	s2 = math.sin(s.theta)**2
	y2 = p.q1 * p.q2 / s2 + s.eps1 * s.eps2 * _product_root(p.q1**2 / s2, p.q2**2 / s2, ledger)
	chirality = -s.delta1 * s.eps1 * (1 if p.p2 > 0 else -1)
	return DiagonalCosines(y_of_state(p, s, ledger), y2, math.cos(2 * s.theta), chirality)


def recover_state(p, d, ledger=None):
	"""State with delta1 = +1 reproducing the diagonal cosines d.

	The diagonals fix theta, delta1*delta2 and eps1*eps2; eps1 itself comes
	from the chirality of d and defaults to +1 when that is unknown.
	"""
	ledger = ledger or settings.default
	low, high = octa.theta_bounds(p)
	theta = 0.5 * sphere.arccos(d.y3, band=ledger['clamp'])
	if not low - ledger['identity'] <= theta <= high + ledger['identity']:
		raise errors.ParameterError('inconsistent diagonals: theta {0!r} outside [{1!r}, {2!r}]'.format(theta, low, high))
	theta = min(max(theta, low), high)
	c2, s2 = math.cos(theta)**2, math.sin(theta)**2
	immaterial = []

	# roots this small are rounding noise next to an endpoint
	noise = math.sqrt(ledger['roundtrip'])

	def sign_of(value, base, root, name):
		if root < noise:
			immaterial.append(name)
			return 1
		return 1 if value >= base else -1

	root1 = _product_root(p.p1**2 / c2, p.p2**2 / c2, ledger)
	root2 = _product_root(p.q1**2 / s2, p.q2**2 / s2, ledger)
	delta2 = sign_of(d.y1, p.p1 * p.p2 / c2, root1, 'delta2')
	eps_product = sign_of(d.y2, p.q1 * p.q2 / s2, root2, 'eps2')
	eps1 = -d.chirality * (1 if p.p2 > 0 else -1) if d.chirality else 1
	state = octa.FlexState(theta, 1, delta2, eps1, eps1 * eps_product, immaterial=immaterial)
	expected = diagonal_closed_forms(p, state, ledger)
	slack1 = ledger['identity'] + (2 * root1 if 'delta2' in immaterial else 0)
	slack2 = ledger['identity'] + (2 * root2 if 'eps2' in immaterial else 0)
	if abs(expected.y1 - d.y1) > slack1 or abs(expected.y2 - d.y2) > slack2:
		raise errors.ParameterError('inconsistent diagonals: no state reproduces {0!r}'.format(d))
	return state


def component_of(s):
	"""'plus' when delta1*eps1 = 1, else 'minus'.
	"""
	return 'plus' if s.delta1 * s.eps1 == 1 else 'minus'


class ComponentTrace():
	"""Closed loop of states on one component, with the octahedra built
	at them and a cumulative chord-length arc coordinate.
	"""
	def __init__(self, params, component, states, octahedra):
		self.params = params
		self.component = component
		self.states = list(states)
		self.octahedra = list(octahedra)
		coords = np.array([o.coords.ravel() for o in self.octahedra])
		steps = np.linalg.norm(np.diff(coords, axis=0), axis=1)
		self.arc = np.concatenate([[0.0], np.cumsum(steps)])
		self.closing = float(np.linalg.norm(coords[0] - coords[-1]))

	def __len__(self):
		return len(self.states)

	def __iter__(self):
		return iter(self.states)

	def __getitem__(self, index):
		return self.states[index]

	def __repr__(self):
		return 'ComponentTrace({0!r}, {1}, n={2})'.format(self.params, self.component, len(self))

	@property
	def thetas(self):
		return np.array([s.theta for s in self.states])


def leg_nodes(low, high, m, up):
	"""m Chebyshev-Lobatto nodes of [low, high] without the far end.
	"""
	k = np.arange(m)
	offsets = (high - low) * (1 - np.cos(np.pi * k / m)) / 2
	return low + offsets if up else high - offsets


def trace_component(p, component, n):
	"""States along the component, four legs of n/4 nodes each.

	:param component: 'plus' or 'minus'
	:param n: node count, a multiple of 4 not below 8
	"""
	if component not in COMPONENTS:
		raise errors.ParameterError('unknown component: {0!r}'.format(component))
	if n < 8 or n % 4:
		raise errors.ParameterError('node count must be a multiple of 4 and at least 8, got {0}'.format(n))
	low, high = octa.theta_bounds(p)
	eps1 = COMPONENTS[component]
	states = []
	for (delta2, eps2), up in LEGS:
		nodes = leg_nodes(low, high, n // 4, up)
		for index, theta in enumerate(nodes):
			immaterial = ()
			if index == 0: immaterial = ('eps2',) if up else ('delta2',)
			states.append(octa.FlexState(theta, 1, delta2, eps1, eps2, immaterial=immaterial))
	octahedra = [octa.build(p, s) for s in states]
	logger.debug('traced component %s of %r with %d nodes', component, tuple(p), n)
	return ComponentTrace(p, component, states, octahedra)


class TangentSeries():
	"""Oriented dihedral angles at the 12 edges along a trace, and the
	projective tangents of their halves.
	"""
	def __init__(self, trace, angles):
		self.trace = trace
		self.edges = octa.EDGES
		self.angles = np.asarray(angles)
		self.pairs = np.stack([np.sin(self.angles / 2), np.cos(self.angles / 2)], axis=-1)

	def __len__(self):
		return self.angles.shape[0]

	def column(self, edge):
		return self.edges.index(octa.edge_key(edge))

	def angles_of(self, edge):
		return self.angles[:, self.column(edge)]

	def pairs_of(self, edge):
		return self.pairs[:, self.column(edge), :]

	def at(self, index):
		"""Angles at one node keyed by edge.
		"""
		return dict(zip(self.edges, self.angles[index]))


def tangents_along(p, trace):
	angles = [[sphere.oriented_dihedral_angle(o, edge) for edge in octa.EDGES] for o in trace.octahedra]
	return TangentSeries(trace, angles)
