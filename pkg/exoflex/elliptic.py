#!/usr/bin/env python3

"""Jacobi elliptic functions and the kind of an exotic family at a face.

Along a component the tangent at an edge of a face is, up to t -> +-t^(+-1),
either of dn type (never 0 or infinite) or of cn/sn type (hits 0 and
infinity where a tetrahedron degenerates). For the face u1u2u3 let t1, t2,
t3 be the tangents at the edges u2u3, u3u1, u1u2. The face is of the first
kind when t1 and t2 are both of dn type, of the second kind when exactly
one is, and of the third kind when neither is.
"""

import logging
import math

import numpy as np
from scipy import integrate

from exoflex import configspace, errors, octa, settings


logger = logging.getLogger(__name__)

KINDS = ('First', 'Second', 'Third')

EXPECTED_KINDS = {
	'a1a2a3': 'First', 'a1a2b3': 'First',
	'a1b2a3': 'Second', 'a1b2b3': 'Second', 'b1a2a3': 'Second', 'b1a2b3': 'Second',
	'b1b2a3': 'Third', 'b1b2b3': 'Third',
}


def agm(a, b, tol=1e-16):
	"""Arithmetic-geometric mean of two positive numbers.
	"""
	if a <= 0 or b <= 0:
		raise errors.DomainError('agm needs positive arguments, got {0!r}, {1!r}'.format(a, b))
	for _ in range(64):
		if abs(a - b) <= tol * a: break
		a, b = (a + b) / 2, math.sqrt(a * b)
	return (a + b) / 2


def _check_modulus(k):
	if not 0 <= k < 1:
		raise errors.DomainError('elliptic modulus must lie in [0, 1), got {0!r}'.format(k))


def elliptic_K(k):
	"""Complete elliptic integral of the first kind, pi / (2 agm(1, k')).
	"""
	_check_modulus(k)
	return math.pi / (2 * agm(1.0, math.sqrt(1 - k**2)))


def elliptic_K_quadrature(k):
	_check_modulus(k)
	value, _ = integrate.quad(lambda t: 1 / math.sqrt(1 - (k * math.sin(t))**2), 0, math.pi / 2,
							epsabs=1e-15, epsrel=1e-14)
	return value


class EllipticModulus():
	def __init__(self, k):
		_check_modulus(k)
		self.k = float(k)
		self.k_prime = math.sqrt(1 - self.k**2)
		self.K = elliptic_K(self.k)

	def __repr__(self):
		return 'EllipticModulus(k={0!r}, K={1!r})'.format(self.k, self.K)


def jacobi(u, k, tol=1e-16):
	"""sn, cn and dn of a real argument by the descending Landen (AGM)
	recursion.

	:returns: (sn, cn, dn)
	"""
	_check_modulus(k)
	a, c = [1.0], [k]
	b = math.sqrt(1 - k**2)
	while abs(c[-1]) > tol and len(a) < 64:
		a_n = a[-1]
		a.append((a_n + b) / 2)
		c.append((a_n - b) / 2)
		b = math.sqrt(a_n * b)
	n = len(a) - 1
	phi = 2**n * a[n] * u
	for i in range(n, 0, -1):
		phi = (phi + math.asin(c[i] / a[i] * math.sin(phi))) / 2
	sn, cn = math.sin(phi), math.cos(phi)
	return sn, cn, math.sqrt(1 - (k * sn)**2)


def face_tuple(face):
	if isinstance(face, str): face = (face[0:2], face[2:4], face[4:6])
	face = tuple(face)
	if face not in octa.FACES:
		raise errors.ParameterError('not a face: {0}'.format(''.join(face)))
	return face


def face_edges(face):
	"""Edges carrying t1, t2, t3 of a face.
	"""
	u1, u2, u3 = face_tuple(face)
	return {'t1': octa.edge_key(u2, u3), 't2': octa.edge_key(u3, u1), 't3': octa.edge_key(u1, u2)}


class Degeneracy():
	"""Where the dihedral angle at one edge comes closest to 0 or pi.
	"""
	def __init__(self, edge, smallest, theta, where, degenerate):
		self.edge = edge
		self.smallest = smallest
		self.theta = theta
		self.where = where
		self.degenerate = degenerate

	def __repr__(self):
		return 'Degeneracy({0}, {1!r}, {2})'.format(''.join(self.edge), self.smallest, self.where)

	def asdict(self):
		return {'edge': ''.join(self.edge), 'min_abs_sin': self.smallest, 'theta': self.theta,
				'where': self.where if self.degenerate else None}


def detect_degeneracy(series, edge, ledger=None):
	"""Checks whether the angle at edge reaches 0 or pi along the series.

	:raises: AmbiguousDetectionError when it only comes close
	"""
	ledger = ledger or settings.default
	sines = np.abs(np.sin(series.angles_of(edge)))
	index = int(np.argmin(sines))
	smallest = float(sines[index])
	theta = series.trace.states[index].theta
	low, high = octa.theta_bounds(series.trace.params)
	where = 'theta_min' if abs(theta - low) <= abs(theta - high) else 'theta_max'
	if abs(theta - low) > ledger['identity'] and abs(theta - high) > ledger['identity']: where = 'interior'
	if ledger['degenerate'] <= smallest < ledger['ambiguous']:
		raise errors.AmbiguousDetectionError('angle at {0} comes within {1!r} of 0/pi without reaching it'.format(''.join(edge), smallest))
	return Degeneracy(edge, smallest, theta, where, smallest < ledger['degenerate'])


class FitResult():
	"""t3 = a t + b / t for the base tangent t, up to the variant used.
	"""
	def __init__(self, a, b, residual, variant, base):
		self.a, self.b = a, b
		self.residual = residual
		self.variant = variant
		self.base = base

	def __iter__(self):
		return iter((self.a, self.b, self.residual, self.variant))

	def __repr__(self):
		return 'FitResult(a={0!r}, b={1!r}, residual={2!r}, variant={3!r})'.format(*self)

	@property
	def sign(self):
		return 1 if self.a * self.b > 0 else -1

	def asdict(self):
		return {'a': self.a, 'b': self.b, 'residual': self.residual, 'variant': self.variant,
				'base': self.base, 'sign_ab': self.sign}


def _homogeneous_fit(base, target):
	x, y = base[:, 0], base[:, 1]
	x3, y3 = target[:, 0], target[:, 1]
	design = np.column_stack([y3 * x**2, y3 * y**2])
	rhs = x3 * x * y
	coefficients, _, _, _ = np.linalg.lstsq(design, rhs, rcond=None)
	residual = float(np.sqrt(np.mean((design @ coefficients - rhs)**2)))
	return float(coefficients[0]), float(coefficients[1]), residual


def choose_base(series, face, ledger=None):
	"""The first of t1, t2 whose angle never degenerates, else t1.
	"""
	edges = face_edges(face)
	for name in ('t1', 't2'):
		if not detect_degeneracy(series, edges[name], ledger).degenerate: return name
	return 't1'


def structural_fit(series, face, ledger=None, base=None, permutation=None):
	"""Least-squares fit of t3 = a t + b / t along a component, trying the
	target and base tangents and their reciprocals.

	:param base: 't1' or 't2'; chosen by :func:`choose_base` when omitted
	:param permutation: reorders the t3 samples, for negative controls
	:returns: FitResult
	"""
	ledger = ledger or settings.default
	edges = face_edges(face)
	base = base or choose_base(series, face, ledger)
	base_pairs = series.pairs_of(edges[base])
	target_pairs = series.pairs_of(edges['t3'])
	if permutation is not None: target_pairs = target_pairs[permutation]
	best = None
	for target_name, target in (('t3', target_pairs), ('1/t3', target_pairs[:, ::-1])):
		for base_name, pairs in ((base, base_pairs), ('1/' + base, base_pairs[:, ::-1])):
			a, b, residual = _homogeneous_fit(pairs, target)
			if best is None or residual < best.residual:
				best = FitResult(a, b, residual, '{0}~{1}'.format(target_name, base_name), base)
	if best.residual > ledger['fit']:
		raise errors.FitError('no fit for face {0}: best residual {1!r} ({2})'.format(''.join(face_tuple(face)), best.residual, best.variant))
	return best


class KindLabel():
	"""Kind of a face with the evidence behind it.

	The scale and phase constants of the elliptic parametrization are not
	fitted and stay None in `placeholders`.
	"""
	def __init__(self, face, label, degeneracies, fit=None, k_prime_estimate=None):
		self.face = face_tuple(face)
		self.label = label
		self.degeneracies = degeneracies
		self.fit = fit
		self.k_prime_estimate = k_prime_estimate
		self.placeholders = {'lambda': None, 'sigma': None, 'u': None}

	def __repr__(self):
		return 'KindLabel({0}, {1})'.format(''.join(self.face), self.label)

	def __eq__(self, other):
		if isinstance(other, str): return self.label == other
		return isinstance(other, KindLabel) and (self.face, self.label) == (other.face, other.label)

	def asdict(self):
		data = {'label': self.label, 'degenerate': {k: v.asdict() for k, v in self.degeneracies.items()},
				'k_prime_estimate': self.k_prime_estimate, 'placeholders': dict(self.placeholders)}
		if self.fit is not None:
			data.update(residual=self.fit.residual, sign_ab=self.fit.sign, fit=self.fit.asdict())
		return data


def _series(p, series, n):
	if series is not None: return series
	trace = configspace.trace_component(p, 'plus', n)
	return configspace.tangents_along(p, trace)


def classify_kind(p, face, series=None, n=256, ledger=None, fit=True):
	"""Kind of the family p at face, from the degeneracies of t1 and t2
	along a traced component.

	:returns: KindLabel
	"""
	ledger = ledger or settings.default
	series = _series(p, series, n)
	edges = face_edges(face)
	degeneracies = {name: detect_degeneracy(series, edges[name], ledger) for name in ('t1', 't2')}
	label = KINDS[sum(d.degenerate for d in degeneracies.values())]
	result = None
	k_prime = None
	if fit:
		result = structural_fit(series, face, ledger)
		if not degeneracies[result.base].degenerate:
			magnitudes = np.abs(np.tan(series.angles_of(edges[result.base]) / 2))
			k_prime = float(np.min(magnitudes) / np.max(magnitudes))
	logger.debug('face %s: %s', face_tuple(face), label)
	return KindLabel(face, label, degeneracies, result, k_prime)


def kind_table(p, n=256, ledger=None, series=None):
	"""KindLabel of every face, keyed by face name.
	"""
	series = _series(p, series, n)
	return {''.join(face): classify_kind(p, face, series, ledger=ledger) for face in octa.FACES}
