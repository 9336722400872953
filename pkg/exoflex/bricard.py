#!/usr/bin/env python3

"""Vertex links and the biquadratic relations between tangents of half
dihedral angles.

The link of a vertex u is the spherical quadrilateral cut out by the four
faces at u. Its sides are the face angles at u, its angles are the dihedral
angles at the edges through u. Tangents t = tan(phi/2) are handled as
projective pairs (X, Y) with X^2 + Y^2 = 1, so t = 0 is (0, 1) and
t = infinity is (1, 0).
"""

import logging
import math

import numpy as np

from exoflex import errors, octa, settings, sphere


logger = logging.getLogger(__name__)

QUAD_CLASSES = ('Isogram', 'Antiisogram', 'Deltoid', 'Antideltoid', 'Generic')

# vertices whose links are checked by exotic_face_check and their expected class
WITNESS_LINKS = {'a1': 'Antideltoid', 'b1': 'Antideltoid', 'a2': 'Deltoid', 'b2': 'Deltoid'}


def projective(t):
	"""Normalized projective pair for a tangent.

	:param t: a float (possibly infinite) or a pair (X, Y)
	"""
	if isinstance(t, (tuple, list, np.ndarray)):
		x, y = float(t[0]), float(t[1])
	elif math.isinf(t):
		x, y = 1.0, 0.0
	else:
		x, y = float(t), 1.0
	norm = math.hypot(x, y)
	if norm == 0:
		raise errors.DomainError('(0:0) is not a projective point')
	return x / norm, y / norm


class BiquadCoeffs():
	"""Coefficients of
	A X1^2 X2^2 + B X1^2 Y2^2 + 2C X1 Y1 X2 Y2 + D Y1^2 X2^2 + E Y1^2 Y2^2.
	"""
	def __init__(self, A, B, C, D, E):
		self.A, self.B, self.C, self.D, self.E = A, B, C, D, E

	def __iter__(self):
		return iter((self.A, self.B, self.C, self.D, self.E))

	def __repr__(self):
		return 'BiquadCoeffs({0!r}, {1!r}, {2!r}, {3!r}, {4!r})'.format(*self)

	@property
	def scale(self):
		return max(abs(x) for x in self)


def biquad_coeffs(alpha, beta, gamma, delta):
	cg = math.cos(gamma)
	return BiquadCoeffs(cg - math.cos(alpha + beta + delta),
						cg - math.cos(alpha + beta - delta),
						-2 * math.sin(beta) * math.sin(delta),
						cg - math.cos(alpha - beta + delta),
						cg - math.cos(alpha - beta - delta))


def biquad_residual(c, t1, t2):
	"""Value of the biquadratic form at (t1, t2), normalized by the
	largest coefficient.
	"""
	x1, y1 = projective(t1)
	x2, y2 = projective(t2)
	value = (c.A * x1**2 * x2**2 + c.B * x1**2 * y2**2 + 2 * c.C * x1 * y1 * x2 * y2
			+ c.D * y1**2 * x2**2 + c.E * y1**2 * y2**2)
	scale = c.scale
	return value / scale if scale > 0 else value


class QuadClass():
	def __init__(self, name, pairing=None):
		self.name = name
		self.pairing = pairing

	def __eq__(self, other):
		if isinstance(other, str): return self.name == other
		return isinstance(other, QuadClass) and self.name == other.name

	def __repr__(self):
		return 'QuadClass({0!r}, {1!r})'.format(self.name, self.pairing)

	def __str__(self):
		return self.name


def classify_quad(sides, tol=None):
	"""Isogram, Antiisogram, Deltoid, Antideltoid or Generic, in that priority.

	:param sides: (alpha, beta, gamma, delta) in cyclic order
	"""
	if tol is None: tol = settings.default['classify']
	alpha, beta, gamma, delta = sides
	for side in sides:
		if not 0 < side < math.pi:
			raise errors.DomainError('quadrilateral side outside (0, pi): {0!r}'.format(side))

	def equal(x, y): return abs(x - y) <= tol

	def complementary(x, y): return abs(x + y - math.pi) <= tol

	if equal(alpha, gamma) and equal(beta, delta): return QuadClass('Isogram', 'alpha=gamma,beta=delta')
	if complementary(alpha, gamma) and complementary(beta, delta):
		return QuadClass('Antiisogram', 'alpha+gamma=pi,beta+delta=pi')
	if equal(alpha, beta) and equal(gamma, delta): return QuadClass('Deltoid', 'alpha=beta,gamma=delta')
	if equal(beta, gamma) and equal(delta, alpha): return QuadClass('Deltoid', 'beta=gamma,delta=alpha')
	if complementary(alpha, beta) and complementary(gamma, delta):
		return QuadClass('Antideltoid', 'alpha+beta=pi,gamma+delta=pi')
	if complementary(beta, gamma) and complementary(delta, alpha):
		return QuadClass('Antideltoid', 'beta+gamma=pi,delta+alpha=pi')
	return QuadClass('Generic')


class LinkQuad():
	"""Link of a vertex: sides (face angles) and the tangents of half the
	dihedral angles at the four link vertices.

	:param vertex: label of the vertex
	:param neighbours: labels of the link vertices in cyclic order
	"""
	def __init__(self, vertex, neighbours, sides, angles):
		self.vertex = vertex
		self.neighbours = tuple(neighbours)
		self.alpha, self.beta, self.gamma, self.delta = sides
		self.angles = tuple(angles)

	def __repr__(self):
		return 'LinkQuad({0}: {1})'.format(self.vertex, ', '.join('{0:.6f}'.format(x) for x in self.sides))

	@property
	def sides(self):
		return (self.alpha, self.beta, self.gamma, self.delta)

	@property
	def angle_t(self):
		return tuple(sphere.tangent(phi) for phi in self.angles)

	def pair(self, k):
		"""Relation between the tangents at link vertices k and k+1.

		Sides are fed as (shared side, other side at vertex k, opposite side,
		other side at vertex k+1) with t1 at vertex k and t2 at vertex k+1.

		:returns: (BiquadCoeffs, t1, t2)
		"""
		s = self.sides
		coeffs = biquad_coeffs(s[k % 4], s[(k - 1) % 4], s[(k + 2) % 4], s[(k + 1) % 4])
		t = self.angle_t
		return coeffs, t[k % 4], t[(k + 1) % 4]

	def classify(self, tol=None):
		return classify_quad(self.sides, tol)


def link_sides(o, v):
	"""Face angles at v between consecutive neighbours.
	"""
	around = octa.neighbours(v)
	return [sphere.angle(o[v], o[around[i]], o[around[(i + 1) % 4]]) for i in range(4)]


def vertex_link(o, v, angles=None):
	"""Link of vertex v of the octahedron o.

	:param angles: precomputed oriented dihedral angles by edge, optional
	"""
	around = octa.neighbours(v)
	sides = link_sides(o, v)
	edges = [octa.edge_key(v, w) for w in around]
	if angles is None:
		values = [sphere.oriented_dihedral_angle(o, edge) for edge in edges]
	else:
		values = [angles[edge] for edge in edges]
	return LinkQuad(v, around, sides, values)


def pair_relation(o, vertex, k):
	return vertex_link(o, vertex).pair(k)


def face_pair_residuals(o, angles=None):
	"""The 24 residuals of the relations between adjacent edges at a vertex.

	:returns: list of (vertex, edge, edge, residual)
	"""
	if angles is None:
		angles = {edge: sphere.oriented_dihedral_angle(o, edge) for edge in octa.EDGES}
	found = []
	for v in octa.LABELS:
		link = vertex_link(o, v, angles)
		for k in range(4):
			coeffs, t1, t2 = link.pair(k)
			found.append((v, octa.edge_key(v, link.neighbours[k]), octa.edge_key(v, link.neighbours[(k + 1) % 4]),
						biquad_residual(coeffs, t1, t2)))
	return found


class WitnessReport():
	"""Outcome of exotic_face_check.
	"""
	def __init__(self, samples):
		self.samples = samples
		self.failures = []
		self.classes = {}
		self.nu1 = None
		self.nu2 = None

	def __bool__(self):
		return self.passed

	def __repr__(self):
		return 'WitnessReport(passed={0}, nu1={1}, nu2={2})'.format(self.passed, self.nu1, self.nu2)

	@property
	def passed(self):
		return not self.failures

	def fail(self, message):
		if message not in self.failures: self.failures.append(message)

	def asdict(self):
		return {'passed': self.passed, 'samples': self.samples, 'nu1': self.nu1, 'nu2': self.nu2,
				'links': {v: sorted(names) for v, names in self.classes.items()},
				'failures': list(self.failures)}


def _ratio(numerator, denominator, tol):
	if abs(denominator) < tol: return None
	return numerator / denominator


def exotic_face_check(p, samples=64, seed=0, ledger=None):
	"""Checks the link witnesses of an exotic family on sampled states.

	The links of a2 and b2 must be deltoids and those of a1 and b1
	antideltoids; the cosine relations at a1 and a2 must give nu1 = -1
	and nu2 = +1. Families with |q1| = |q2| are built anyway and rejected
	through their a1 link.

	:returns: WitnessReport
	"""
	ledger = ledger or settings.default
	report = WitnessReport(samples)
	violations = octa.validate_params(p).violations
	boundary = violations == ['|q1|<|q2|'] and abs(p.q1) == abs(p.q2)
	if violations and not boundary:
		for v in violations: report.fail('invalid parameters: {0}'.format(v))
		return report
	low, high = math.asin(max(abs(p.q1), abs(p.q2))), math.acos(abs(p.p2))
	rng = np.random.default_rng(seed)
	nu1s, nu2s = set(), set()
	for _ in range(samples):
		theta = low + (high - low) * (0.02 + 0.96 * rng.random())
		signs = [1] + [int(x) for x in rng.choice((-1, 1), size=3)]
		s = octa.FlexState(theta, *signs)
		o = octa.build(p, s, check=False, validate=not boundary)
		for v, expected in WITNESS_LINKS.items():
			try:
				name = classify_quad(link_sides(o, v), ledger['classify']).name
			except errors.DomainError as e:
				report.fail('link of {0} is degenerate: {1}'.format(v, e))
				continue
			report.classes.setdefault(v, set()).add(name)
			if name != expected: report.fail('link of {0} is {1}, expected {2}'.format(v, name, expected))
		# cos(b2 a1 a3) = nu1 cos(b2 a1 b3); cos(b1 a2 a3) = nu2 cos(b1 a2 b3)
		nu1 = _ratio(math.cos(sphere.angle(o['a1'], o['b2'], o['a3'])), math.cos(sphere.angle(o['a1'], o['b2'], o['b3'])), ledger['identity'])
		nu2 = _ratio(math.cos(sphere.angle(o['a2'], o['b1'], o['a3'])), math.cos(sphere.angle(o['a2'], o['b1'], o['b3'])), ledger['identity'])
		for value, bucket in ((nu1, nu1s), (nu2, nu2s)):
			if value is None: continue
			if abs(abs(value) - 1) > ledger['identity']: report.fail('cosine ratio {0!r} is not +-1'.format(value))
			bucket.add(int(round(value)))
		lengths = octa.edge_lengths(o)
		if abs(math.cos(lengths['a2a3']) + math.cos(lengths['a2b3'])) > ledger['identity']:
			report.fail('cos l(a2a3) != -cos l(a2b3)')
	if len(nu1s) == 1: report.nu1 = nu1s.pop()
	else: report.fail('nu1 not constant: {0}'.format(sorted(nu1s)))
	if len(nu2s) == 1: report.nu2 = nu2s.pop()
	else: report.fail('nu2 not constant: {0}'.format(sorted(nu2s)))
	if (report.nu1, report.nu2) != (-1, 1): report.fail('expected (nu1, nu2) = (-1, 1), got ({0}, {1})'.format(report.nu1, report.nu2))
	logger.info('exotic face check on %r: %r', tuple(p), report)
	return report

