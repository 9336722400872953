#!/usr/bin/env python3

"""Combinatorial octahedron and the exotic flexible family.

Vertices are labelled a1, a2, a3, b1, b2, b3; the pairs {ai, bi} are the
three diagonals, every other pair is an edge. The face with vertices
u1 u2 u3 (ui one of ai, bi) is positively oriented in this order when it
contains an even number of b's, otherwise in the order u1 u3 u2.
"""

import itertools
import logging
import math

import numpy as np

from exoflex import errors, settings, sphere


logger = logging.getLogger(__name__)

LABELS = ('a1', 'a2', 'a3', 'b1', 'b2', 'b3')

EDGES = tuple((x + str(i), y + str(j))
			for i, j in ((1, 2), (1, 3), (2, 3))
			for x in 'ab' for y in 'ab')

FACES = tuple((u1, u2, u3) for u1 in ('a1', 'b1') for u2 in ('a2', 'b2') for u3 in ('a3', 'b3'))

SIGNS = ('delta1', 'delta2', 'eps1', 'eps2')


def _index(label):
	return int(label[1])


def oriented(face):
	"""Positive vertex order of a face.
	"""
	if sum(label[0] == 'b' for label in face) % 2 == 0: return tuple(face)
	return (face[0], face[2], face[1])


def edge_key(u, v=None):
	"""Canonical edge tuple; accepts ('a2', 'a1'), 'a1a2' or 'a2a1'.
	"""
	if v is None:
		if isinstance(u, str): u, v = u[:2], u[2:]
		else: u, v = u
	if u not in LABELS or v not in LABELS or _index(u) == _index(v):
		raise errors.ParameterError('not an edge: {0}{1}'.format(u, v))
	return (u, v) if _index(u) < _index(v) else (v, u)


def neighbours(v):
	"""Cyclic order of the four neighbours of a vertex: aj, ak, bj, bk for j < k.
	"""
	j, k = [i for i in (1, 2, 3) if i != _index(v)]
	return ('a{0}'.format(j), 'a{0}'.format(k), 'b{0}'.format(j), 'b{0}'.format(k))


class ExoticParams():
	"""The four edge-length cosines p1, p2, q1, q2 of an exotic family.
	"""
	def __init__(self, p1, p2, q1, q2):
		self.p1, self.p2, self.q1, self.q2 = (float(x) for x in (p1, p2, q1, q2))

	def __iter__(self):
		return iter((self.p1, self.p2, self.q1, self.q2))

	def __eq__(self, other):
		return isinstance(other, ExoticParams) and tuple(self) == tuple(other)

	def __hash__(self):
		return hash(tuple(self))

	def __repr__(self):
		return 'ExoticParams({0!r}, {1!r}, {2!r}, {3!r})'.format(*self)

	@classmethod
	def parse(cls, text):
		return cls(*settings.parse_params(text))

	@property
	def r1(self):
		return 1 / math.sqrt(1 - self.q1**2)

	@property
	def r2(self):
		return 1 / math.sqrt(1 - self.q2**2)


class Report():
	"""Outcome of validate_params; true when there are no violations.
	"""
	def __init__(self, violations=()):
		self.violations = list(violations)

	def __bool__(self):
		return not self.violations

	def __repr__(self):
		return 'Report(ok)' if self else 'Report({0!r})'.format(self.violations)


def validate_params(p):
	violations = []
	values = list(p)
	if not all(math.isfinite(x) and -1 < x < 1 for x in values): violations.append('|x|<1')
	if not abs(p.p1) < abs(p.p2): violations.append('|p1|<|p2|')
	if not abs(p.q1) < abs(p.q2): violations.append('|q1|<|q2|')
	if not p.p2**2 + p.q2**2 < 1: violations.append('p2²+q2²<1')
	return Report(violations)


def require_valid(p):
	report = validate_params(p)
	if not report:
		raise errors.ParameterError('invalid parameters {0!r}: violates {1}'.format(tuple(p), ', '.join(report.violations)))
	return p


def theta_bounds(p):
	require_valid(p)
	return math.asin(abs(p.q2)), math.acos(abs(p.p2))


class FlexState():
	"""A point of the configuration space: angle theta and four signs.

	:param immaterial: names of signs that do not affect the vertices
		(delta2 at theta_max, eps2 at theta_min)
	"""
	def __init__(self, theta, delta1=1, delta2=1, eps1=1, eps2=1, immaterial=()):
		self.theta = float(theta)
		for name, value in zip(SIGNS, (delta1, delta2, eps1, eps2)):
			if value not in (1, -1):
				raise errors.ParameterError('sign {0} must be +1 or -1, got {1!r}'.format(name, value))
			setattr(self, name, int(value))
		self.immaterial = frozenset(immaterial)

	def __repr__(self):
		return 'FlexState({0!r}, {1}, {2}, {3}, {4})'.format(self.theta, *self.signs)

	def __eq__(self, other):
		return isinstance(other, FlexState) and self.theta == other.theta and self.signs == other.signs

	def __hash__(self):
		return hash((self.theta, self.signs))

	@property
	def signs(self):
		return (self.delta1, self.delta2, self.eps1, self.eps2)

	def replace(self, **changes):
		fields = dict(zip(SIGNS, self.signs), theta=self.theta, immaterial=self.immaterial)
		fields.update(changes)
		return FlexState(**fields)

	def flipped(self):
		return FlexState(self.theta, *(-x for x in self.signs), immaterial=self.immaterial)


class Octahedron():
	"""Six labelled points of S^3 with the fixed octahedral combinatorics.
	"""
	def __init__(self, vertices):
		self._vertices = {label: np.asarray(vertices[label], dtype=float) for label in LABELS}

	def __getitem__(self, label):
		return self._vertices[label]

	def __iter__(self):
		return iter(LABELS)

	def __repr__(self):
		return 'Octahedron({0})'.format(', '.join('{0}={1}'.format(k, np.round(self[k], 6).tolist()) for k in LABELS))

	@property
	def coords(self):
		return np.array([self[label] for label in LABELS])

	def faces(self):
		"""Positively oriented faces as (labels, vectors) pairs.
		"""
		return [(oriented(face), [self[label] for label in oriented(face)]) for face in FACES]

	def edge_faces(self, edge):
		u, v = edge_key(edge)
		return [(labels, vectors) for labels, vectors in self.faces() if u in labels and v in labels]

	def degenerate_faces(self, tol=None):
		if tol is None: tol = settings.default['gram']
		found = []
		for labels, vectors in self.faces():
			gram = float(np.prod(np.linalg.svd(np.array(vectors), compute_uv=False)))
			if gram < tol: found.append((labels, gram))
		return found

	def check(self, tol=None):
		for labels, gram in self.degenerate_faces(tol):
			raise errors.DegenerateFaceError(labels, gram)
		return self


def build(p, s, check=True, validate=True, ledger=None):
	"""Vertices of the exotic octahedron with parameters p at state s.

	:type p: ExoticParams
	:type s: FlexState
	:param validate: refuse parameters failing validate_params; families on
		the boundary of the valid range need validate=False
	:returns: Octahedron
	"""
	ledger = ledger or settings.default
	if validate: low, high = theta_bounds(p)
	else: low, high = math.asin(max(abs(p.q1), abs(p.q2))), math.acos(max(abs(p.p1), abs(p.p2)))
	theta = s.theta
	if not low - ledger['clamp'] <= theta <= high + ledger['clamp']:
		raise errors.ParameterError('theta {0!r} outside [{1!r}, {2!r}]'.format(theta, low, high))
	theta = min(max(theta, low), high)
	c, si = math.cos(theta), math.sin(theta)

	def leg(ratio, sign):
		return ratio, sign * sphere.sqrt(1 - ratio**2, band=ledger['clamp'], snap=ledger['snap'])

	vertices = {
		'a1': leg(p.p1 / c, s.delta1) + (0.0, 0.0),
		'b1': leg(p.p2 / c, s.delta2) + (0.0, 0.0),
		'a2': (0.0, 0.0) + leg(p.q1 / si, s.eps1),
		'b2': (0.0, 0.0) + leg(p.q2 / si, s.eps2),
		'a3': (c, 0.0, si, 0.0),
		'b3': (c, 0.0, -si, 0.0),
	}
	o = Octahedron(vertices)
	if check: o.check(ledger['gram'])
	return o


class EdgeLengths(dict):
	"""Map edge -> spherical length. Edges may be given in any form
	accepted by :func:`edge_key`.
	"""
	def __getitem__(self, edge):
		return dict.__getitem__(self, edge_key(edge))

	def deviation(self, other):
		return max(abs(self[e] - other[e]) for e in EDGES)


def edge_lengths(o):
	return EdgeLengths((edge, sphere.dist(o[edge[0]], o[edge[1]])) for edge in EDGES)


def mask(labels=()):
	"""AntipodeMask from labels or from a string such as 'a1,b3' or 'none'.
	"""
	if isinstance(labels, str):
		text = labels.strip()
		labels = [] if text in ('', 'none') else [x.strip() for x in text.replace('+', ',').split(',')]
	labels = frozenset(labels)
	unknown = labels - set(LABELS)
	if unknown:
		raise errors.ParameterError('unknown vertex labels in mask: {0}'.format(', '.join(sorted(unknown))))
	return labels


def mask_key(m):
	return ','.join(label for label in LABELS if label in m) or 'none'


def masks():
	"""All 64 masks, by size and then label order.
	"""
	return [frozenset(c) for size in range(7) for c in itertools.combinations(LABELS, size)]


def antipode_variant(o, m):
	m = mask(m)
	variant = Octahedron({label: (-o[label] if label in m else o[label]) for label in LABELS})
	return variant.check()


_FLIPS = {'a1': (0, 'delta1'), 'b1': (1, 'delta2'), 'a2': (2, 'eps1'), 'b2': (3, 'eps2')}
_SWAP = {'a1': 'a2', 'a2': 'a1', 'b1': 'b2', 'b2': 'b1', 'a3': 'a3', 'b3': 'b3'}
_MIRROR = {'a3': 'b3', 'b3': 'a3'}


class Variant():
	"""An antipode variant rewritten as a member of another exotic family.

	The variant of build(p, s) under the mask has oriented volume
	`orientation * closed_form_volume(params, state(s)).lifted`.
	Unpacks as (params, relabeling, swapped_roles).
	"""
	def __init__(self, params, relabeling, steps, orientation):
		self.params = params
		self.relabeling = relabeling
		self.steps = tuple(steps)
		self.orientation = orientation

	def __iter__(self):
		return iter((self.params, self.relabeling, self.swapped_roles))

	def __repr__(self):
		return 'Variant({0!r}, swapped_roles={1}, orientation={2})'.format(self.params, self.swapped_roles, self.orientation)

	@property
	def swapped_roles(self):
		return sum(step == 'swap' for step in self.steps) % 2 == 1

	def state(self, s):
		for step in self.steps:
			if step == 'swap':
				immaterial = {{'delta2': 'eps2', 'eps2': 'delta2'}.get(x, x) for x in s.immaterial}
				s = FlexState(math.pi / 2 - s.theta, s.eps1, s.eps2, s.delta1, s.delta2, immaterial=immaterial)
			else:
				s = s.replace(**{step: -getattr(s, step)})
		return s


def normalize_variant(p, m):
	"""Parameters of the family containing the antipode variant of p under m.

	Masked vertices are processed in label order, each with the rule for
	its current name.
	"""
	require_valid(p)
	m = mask(m)
	params = list(p)
	steps, orientation = [], 1
	current = {label: label for label in LABELS}

	def rename(table):
		for label in current: current[label] = table.get(current[label], current[label])

	def flip(name):
		index, sign = _FLIPS[name]
		params[index] = -params[index]
		steps.append(sign)

	def swap():
		params[:] = [params[2], params[3], params[0], params[1]]
		steps.append('swap')
		rename(_SWAP)

	for label in LABELS:
		if label not in m: continue
		name = current[label]
		if name in _FLIPS:
			flip(name)
		elif name == 'b3':
			swap()
			orientation = -orientation
		else:
			# the rotation diag(1, 1, -1, -1) exchanges a3 and b3 and flips a2, b2
			rename(_MIRROR)
			orientation = -orientation
			flip('a2')
			flip('b2')
			swap()
			orientation = -orientation
	variant = Variant(ExoticParams(*params), dict(current), steps, orientation)
	logger.debug('mask %s -> %r', mask_key(m), variant)
	return variant
