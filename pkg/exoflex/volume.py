#!/usr/bin/env python3

"""Oriented volume of exotic octahedra.

Along an exotic family the oriented volume is

	V = -(delta1 sgn(p2) pi/2) (eps1 A1(y) - eps2 A2(y))   (mod 2 pi^2)

where y is the cosine of the diagonal a1b1 and Aj(y) is the area of the
spherical triangle with side cosines y, rj p1, rj p2, rj = (1 - qj^2)^(-1/2).
The sampling oracle of :mod:`exoflex.sphere` gives an independent estimate
for any octahedron, including antipode variants.
"""

import logging
import math

import numpy as np
from numpy.polynomial import polynomial

from exoflex import configspace, errors, octa, settings, sphere


logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ('arc', 'theta', 'delta2', 'eps2', 'y', 'A1', 'A2', 'V_lifted', 'V_mod')


def _sgn(x):
	return 1 if x > 0 else -1


class AreaFunctions():
	"""The two triangle-area functions of a family and their derivatives.
	"""
	def __init__(self, p, ledger=None):
		self.params = octa.require_valid(p)
		self.ledger = ledger or settings.default
		self.r1, self.r2 = p.r1, p.r2
		self.S = p.p1 + p.p2
		self.P = p.p1 * p.p2
		self.T = p.p1**2 + p.p2**2

	def r(self, j):
		if j not in (1, 2):
			raise errors.ParameterError('area index must be 1 or 2, got {0!r}'.format(j))
		return self.r1 if j == 1 else self.r2

	def area(self, j, y):
		r = self.r(j)
		return sphere.triangle_area(y, r * self.params.p1, r * self.params.p2, band=self.ledger['clamp'])

	def F(self, j, y):
		r = self.r(j)
		return -y**2 + 2 * r**2 * self.P * y + 1 - r**2 * self.T

	def derivative(self, j, y):
		"""dAj/dy, finite on the open interval (y_min, y_max).
		"""
		r = self.r(j)
		radicand = self.F(j, y)
		if radicand <= 0 or y <= -1:
			raise errors.DomainError('area derivative undefined at y={0!r}'.format(y))
		return (r * self.S - y - 1) / ((y + 1) * math.sqrt(radicand))


def area_A(j, y, p):
	return AreaFunctions(p).area(j, y)


def flat_areas(p):
	"""Exact A2 at (y_min, y_max).

	Both triangles are flat. At y_max the long side is the difference of the
	other two and the area is 0. At y_min it closes the perimeter to a+b, or
	to 2 pi when a + b > pi, where the triangle is a great circle of area 2 pi.
	"""
	octa.require_valid(p)
	a, b = math.acos(p.r2 * p.p1), math.acos(p.r2 * p.p2)
	return (0.0 if a + b <= math.pi else 2 * math.pi), 0.0


def closed_form_volume(p, s, ledger=None, areas=None):
	"""Oriented volume of build(p, s) from the closed formula.

	:returns: sphere.VolumeClass
	"""
	areas = areas or AreaFunctions(p, ledger)
	y = configspace.y_of_state(p, s, ledger)
	a1, a2 = areas.area(1, y), areas.area(2, y)
	return sphere.VolumeClass(-(s.delta1 * _sgn(p.p2) * math.pi / 2) * (s.eps1 * a1 - s.eps2 * a2))


def gap(p, s, ledger=None):
	"""Volume difference between the eps2 = +1 and eps2 = -1 states over s,
	reduced to [-pi^2, pi^2).
	"""
	areas = AreaFunctions(p, ledger)
	plus = closed_form_volume(p, s.replace(eps2=1), ledger, areas)
	minus = closed_form_volume(p, s.replace(eps2=-1), ledger, areas)
	return sphere.wrap(plus.lifted - minus.lifted)


def _choose_apex(o, opts, tries=16):
	rng = np.random.default_rng(list(opts.seed) + [0xA9E])
	faces = [vectors for _, vectors in o.faces()]
	for attempt in range(tries):
		apex = sphere.point(rng.standard_normal(4))
		if min(abs(sphere.det(apex, *face)) for face in faces) > 1e-6: return apex
		logger.debug('apex %d rejected, too close to a face sphere', attempt)
	raise errors.ApexSelectionError('no apex off every face sphere after {0} tries'.format(tries))


def decomposition_volume(o, opts=None, form='apex'):
	"""Oriented volume of any octahedron by sampling.

	:param form: 'apex' sums the cones of the eight oriented faces over a
		random apex; 'edge' sums the four tetrahedra around the edge a1b1
	:returns: (sphere.VolumeClass, standard error)
	"""
	opts = opts or sphere.OracleOptions()
	if form == 'apex':
		apex = _choose_apex(o, opts)
		faces = o.faces()
	elif form == 'edge':
		apex = o['b1']
		faces = [(labels, vectors) for labels, vectors in o.faces() if 'b1' not in labels]
	else:
		raise errors.ParameterError('unknown decomposition form: {0!r}'.format(form))
	total, variance = 0.0, 0.0
	for index, (labels, vectors) in enumerate(faces):
		value, stderr = sphere.tetra_volume_oriented(apex, *vectors, opts=opts.derive(index))
		total += value.lifted
		variance += stderr**2
	return sphere.VolumeClass(total), math.sqrt(variance)


class QPoly():
	"""Q(y) = (r1 S - y - 1)^2 F2(y) - (r2 S - y - 1)^2 F1(y) with S = p1 + p2.

	It equals (y+1)^2 F1 F2 (A1'^2 - A2'^2), so A1' = +-A2' only at its roots.
	"""
	def __init__(self, p):
		self.areas = AreaFunctions(p)
		a = self.areas
		self.F1 = np.array([1 - a.r1**2 * a.T, 2 * a.r1**2 * a.P, -1.0])
		self.F2 = np.array([1 - a.r2**2 * a.T, 2 * a.r2**2 * a.P, -1.0])
		u1, u2 = a.r1 * a.S - 1, a.r2 * a.S - 1
		square1 = np.array([u1**2, -2 * u1, 1.0])
		square2 = np.array([u2**2, -2 * u2, 1.0])
		coeffs = polynomial.polysub(polynomial.polymul(square1, self.F2), polynomial.polymul(square2, self.F1))
		self.coefficients = np.zeros(5)
		self.coefficients[:len(coeffs)] = coeffs

	def __call__(self, y):
		return polynomial.polyval(y, self.coefficients)

	def __repr__(self):
		return 'QPoly({0})'.format(', '.join('{0:.6g}'.format(c) for c in self.coefficients))

	@property
	def c0(self):
		return float(self.coefficients[0])

	@property
	def c3(self):
		return float(self.coefficients[3])

	def sum_identity(self):
		"""Closed form of c3 + c0:
		2 (r2 - r1)(p1^2 + p2^2)(r1 r2 (p1 + p2) - r1 - r2).
		"""
		a = self.areas
		return 2 * (a.r2 - a.r1) * a.T * (a.r1 * a.r2 * a.S - a.r1 - a.r2)

	def rearranged(self, y):
		"""(y+1)^2 F1 F2 (A1'^2 - A2'^2) evaluated through the derivatives.
		"""
		a = self.areas
		f1, f2 = polynomial.polyval(y, self.F1), polynomial.polyval(y, self.F2)
		return (y + 1)**2 * f1 * f2 * (a.derivative(1, y)**2 - a.derivative(2, y)**2)

	@property
	def nonvanishing(self):
		return bool(np.max(np.abs(self.coefficients)) > 0)


def derivative_and_Q(p):
	return QPoly(p)


def lift(values):
	"""Continuation of values taken modulo 2 pi^2: each entry is replaced by
	its representative nearest to the previous lifted entry.
	"""
	values = np.asarray(values, dtype=float)
	lifted = np.empty_like(values)
	if not len(values): return lifted
	lifted[0] = sphere.VolumeClass(values[0]).representative
	for i in range(1, len(values)):
		lifted[i] = lifted[i - 1] + sphere.wrap(values[i] - lifted[i - 1])
	return lifted


class VolumeProfile():
	"""Volumes along a trace with their continuous lift.
	"""
	def __init__(self, trace, values, y, areas):
		self.trace = trace
		self.values = np.asarray(values, dtype=float)
		self.y = np.asarray(y, dtype=float)
		self.A1 = np.asarray(areas[0], dtype=float)
		self.A2 = np.asarray(areas[1], dtype=float)
		self.lifted = lift(self.values)

	def __len__(self):
		return len(self.values)

	def __repr__(self):
		return 'VolumeProfile({0}, n={1}, spread={2:.6g})'.format(self.trace.component, len(self), self.spread)

	@property
	def min(self):
		return float(np.min(self.lifted))

	@property
	def max(self):
		return float(np.max(self.lifted))

	@property
	def spread(self):
		return self.max - self.min

	@property
	def gap(self):
		"""Largest volume gap between the two eps2 states over one node, pi A2
		reduced modulo 2 pi^2. The lifted spread is at least this large.
		"""
		return float(math.pi * np.max(np.minimum(self.A2, 2 * math.pi - self.A2)))

	@property
	def max_jump(self):
		return float(np.max(np.abs(np.diff(self.lifted)))) if len(self) > 1 else 0.0

	def rows(self):
		"""One dict per node with the PROFILE_COLUMNS keys.
		"""
		for index, s in enumerate(self.trace.states):
			yield dict(zip(PROFILE_COLUMNS, (
				float(self.trace.arc[index]), s.theta, s.delta2, s.eps2, float(self.y[index]),
				float(self.A1[index]), float(self.A2[index]), float(self.lifted[index]),
				sphere.VolumeClass(self.lifted[index]).representative)))

	def summary(self):
		return {'min': self.min, 'max': self.max, 'spread': self.spread, 'max_A2': float(np.max(self.A2)), 'gap': self.gap}


def volume_profile(p, component, n, trace=None, ledger=None):
	trace = trace or configspace.trace_component(p, component, n)
	areas = AreaFunctions(p, ledger)
	values, ys, a1s, a2s = [], [], [], []
	for s in trace.states:
		y = configspace.y_of_state(p, s, ledger)
		ys.append(y)
		a1s.append(areas.area(1, y))
		a2s.append(areas.area(2, y))
		values.append(closed_form_volume(p, s, ledger, areas).lifted)
	profile = VolumeProfile(trace, values, ys, (a1s, a2s))
	logger.debug('profile %r', profile)
	return profile


def variant_profile(p, m, trace, ledger=None):
	"""Profile of the antipode variant under mask m along a trace of the
	family p, computed through normalize_variant.
	"""
	variant = octa.normalize_variant(p, m)
	q = variant.params
	areas = AreaFunctions(q, ledger)
	values, ys, a1s, a2s = [], [], [], []
	for s in trace.states:
		mapped = variant.state(s)
		y = configspace.y_of_state(q, mapped, ledger)
		ys.append(y)
		a1s.append(areas.area(1, y))
		a2s.append(areas.area(2, y))
		values.append(variant.orientation * closed_form_volume(q, mapped, ledger, areas).lifted)
	return VolumeProfile(trace, values, ys, (a1s, a2s))


def loop_increment(profile):
	"""Change of the lifted volume once around the closed loop.
	"""
	closing = sphere.wrap(profile.values[0] - profile.lifted[-1])
	return float(profile.lifted[-1] + closing - profile.lifted[0])


class BellowsReport():
	"""Spread of the volume of every antipode variant.
	"""
	def __init__(self, params, ledger=None):
		ledger = ledger or settings.default
		self.params = params
		self.threshold = ledger['nonconstant']
		self.minimum = ledger['spread']
		self.entries = {}
		self.spot_checks = []

	def __len__(self):
		return len(self.entries)

	def __repr__(self):
		return 'BellowsReport({0!r}, masks={1}, confirmed={2})'.format(self.params, len(self), self.confirmed)

	def add(self, key, summaries):
		"""Records the component summaries of one mask. A component passes the
		bounds when its spread exceeds the minimum and reaches its gap.
		"""
		for s in summaries.values():
			s['gap_bound'] = s['gap'] - self.threshold
			s['bounds'] = bool(s['spread'] > self.minimum and s['spread'] >= s['gap_bound'])
		spread = min(s['spread'] for s in summaries.values())
		self.entries[key] = {
			'spread': spread,
			'min': min(s['min'] for s in summaries.values()),
			'max': max(s['max'] for s in summaries.values()),
			'verdict': 'nonconstant' if spread > self.threshold else 'constant',
			'bounds': all(s['bounds'] for s in summaries.values()),
			'components': summaries,
		}

	@property
	def confirmed(self):
		return bool(self.entries) and all(e['verdict'] == 'nonconstant' for e in self.entries.values())

	@property
	def bounds_hold(self):
		return bool(self.entries) and all(e['bounds'] for e in self.entries.values())

	@property
	def spot_checks_passed(self):
		return all(check['passed'] for check in self.spot_checks)

	def failures(self):
		"""Masks that are constant, miss a spread bound or fail a spot check.
		"""
		failed = {key for key, e in self.entries.items() if e['verdict'] != 'nonconstant' or not e['bounds']}
		failed.update(check['mask'] for check in self.spot_checks if not check['passed'])
		return sorted(failed)

	def asdict(self):
		return {'params': list(self.params), 'threshold': self.threshold, 'minimum_spread': self.minimum,
				'confirmed': self.confirmed, 'bounds_hold': self.bounds_hold, 'spot_checks_passed': self.spot_checks_passed,
				'masks': self.entries, 'spot_checks': self.spot_checks}


def bellows_sweep(p, n, components=('plus', 'minus'), masks=None, spot_nodes=0, opts=None, ledger=None):
	"""Volume spread of every antipode variant along the traced components.

	:param masks: masks to sweep, all 64 by default
	:param spot_nodes: nodes per mask and component where the closed form
		is compared with decomposition_volume
	:returns: BellowsReport
	"""
	ledger = ledger or settings.default
	masks = octa.masks() if masks is None else [octa.mask(m) for m in masks]
	traces = {c: configspace.trace_component(p, c, n) for c in components}
	report = BellowsReport(p, ledger)
	opts = opts or sphere.OracleOptions(points=ledger['spot_points'], ledger=ledger)
	for mask_index, m in enumerate(masks):
		summaries = {}
		for component_index, (component, trace) in enumerate(traces.items()):
			profile = variant_profile(p, m, trace, ledger)
			summaries[component] = profile.summary()
			for node in spot_node_indices(len(trace), spot_nodes):
				o = octa.antipode_variant(trace.octahedra[node], m)
				estimate, stderr = decomposition_volume(o, opts.derive(mask_index, component_index, node))
				difference = sphere.circular_gap(estimate.lifted, profile.values[node])
				report.spot_checks.append({
					'mask': octa.mask_key(m), 'component': component, 'node': int(node),
					'closed_form': float(profile.values[node]), 'oracle': estimate.lifted, 'stderr': stderr,
					'passed': bool(difference <= ledger['sigma'] * stderr + ledger['identity'])})
		report.add(octa.mask_key(m), summaries)
		logger.debug('mask %s: spread %r', octa.mask_key(m), report.entries[octa.mask_key(m)]['spread'])
	logger.info('%r', report)
	return report


def spot_node_indices(n, count):
	"""count node indices spread evenly over a trace of n nodes.
	"""
	if count <= 0: return []
	return sorted({int(n * (k + 0.5) / count) for k in range(count)})


def schlaefli_check(p, component='plus', points=16, step=1e-6, ledger=None):
	"""Compares dV/dtheta with half the length-weighted sum of the
	derivatives of the dihedral angles at interior states of each leg.

	:returns: (sign, largest deviation)
	"""
	ledger = ledger or settings.default
	low, high = octa.theta_bounds(p)
	eps1 = configspace.COMPONENTS[component]
	lengths = None
	rows = []
	for (delta2, eps2), _ in configspace.LEGS:
		for k in range(points):
			theta = low + (high - low) * (k + 0.5) / points
			before = octa.FlexState(theta - step, 1, delta2, eps1, eps2)
			after = octa.FlexState(theta + step, 1, delta2, eps1, eps2)
			o_before, o_after = octa.build(p, before), octa.build(p, after)
			if lengths is None: lengths = octa.edge_lengths(o_before)
			dv = sphere.wrap(closed_form_volume(p, after, ledger).lifted - closed_form_volume(p, before, ledger).lifted)
			dphi = sum(lengths[edge] * sphere.wrap_angle(sphere.oriented_dihedral_angle(o_after, edge) - sphere.oriented_dihedral_angle(o_before, edge))
					for edge in octa.EDGES) / 2
			rows.append((dv / (2 * step), dphi / (2 * step)))
	reference = max(rows, key=lambda row: abs(row[1]))
	sign = 1 if reference[0] * reference[1] >= 0 else -1
	deviation = max(abs(dv - sign * dphi) for dv, dphi in rows)
	logger.debug('schlaefli check on %s: sign %d, deviation %r', component, sign, deviation)
	return sign, deviation
