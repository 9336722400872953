#!/usr/bin/env python3

"""Invariant suite run by `exoflex verify`.

Every check takes the family, the scenario and a shared cache of traces and
returns a :class:`CheckResult`. A check that raises an exoflex error is
reported as failed with the error message.
"""

import logging
import math

import numpy as np

from exoflex import bricard, configspace, elliptic, errors, octa, sphere, volume


logger = logging.getLogger(__name__)


class CheckResult():
	def __init__(self, name, passed, detail=None):
		self.name = name
		self.passed = bool(passed)
		self.detail = detail if detail is not None else {}

	def __bool__(self):
		return self.passed

	def __repr__(self):
		return 'CheckResult({0!r}, {1})'.format(self.name, 'passed' if self.passed else 'FAILED')

	def asdict(self):
		return {'passed': self.passed, 'detail': self.detail}


class Cache():
	"""Traces and tangent series shared between checks.
	"""
	def __init__(self, p, n):
		self.p = p
		self.n = n
		self._traces = {}
		self._series = {}

	def trace(self, component):
		if component not in self._traces:
			self._traces[component] = configspace.trace_component(self.p, component, self.n)
		return self._traces[component]

	def series(self, component):
		if component not in self._series:
			self._series[component] = configspace.tangents_along(self.p, self.trace(component))
		return self._series[component]


def check_edge_lengths(p, scenario, cache):
	ledger = scenario.ledger
	reference = octa.edge_lengths(cache.trace('plus').octahedra[0])
	deviation = 0.0
	for component in scenario.components:
		for o in cache.trace(component).octahedra:
			deviation = max(deviation, octa.edge_lengths(o).deviation(reference))
	red = max(abs(reference[e] - math.pi / 2) for e in ('a1a2', 'a1b2', 'b1a2', 'b1b2'))
	pairs = max(abs(reference['a1a3'] - reference['a1b3']), abs(reference['b1a3'] - reference['b1b3']))
	sums = max(abs(reference['a2a3'] + reference['a2b3'] - math.pi), abs(reference['b2a3'] + reference['b2b3'] - math.pi))
	worst = max(deviation, red, pairs, sums)
	return CheckResult('edge_lengths', worst <= ledger['roundtrip'],
					{'flex_deviation': deviation, 'right_edges': red, 'equal_pairs': pairs, 'supplementary_pairs': sums})


def check_bricard(p, scenario, cache):
	worst = 0.0
	for component in scenario.components:
		series = cache.series(component)
		for index, o in enumerate(cache.trace(component).octahedra):
			residuals = bricard.face_pair_residuals(o, series.at(index))
			worst = max(worst, max(abs(r[3]) for r in residuals))
	return CheckResult('bricard_residuals', worst < scenario.ledger['identity'], {'max_residual': worst})


def check_links(p, scenario, cache):
	report = bricard.exotic_face_check(p, samples=64, seed=scenario.seed, ledger=scenario.ledger)
	return CheckResult('link_witnesses', report.passed, report.asdict())


def check_recovery(p, scenario, cache):
	ledger = scenario.ledger
	low, high = octa.theta_bounds(p)
	rng = np.random.default_rng(scenario.seed)
	mismatches = 0
	for _ in range(ledger['recover_states']):
		theta = low + (high - low) * (0.001 + 0.998 * rng.random())
		s = octa.FlexState(theta, 1, *(int(x) for x in rng.choice((-1, 1), size=3)))
		recovered = configspace.recover_state(p, configspace.diagonals(octa.build(p, s)), ledger)
		if recovered.signs != s.signs or abs(recovered.theta - s.theta) > ledger['recovery']: mismatches += 1
	return CheckResult('diagonal_recovery', mismatches == 0, {'states': ledger['recover_states'], 'mismatches': mismatches})


def check_oracle(p, scenario, cache):
	ledger = scenario.ledger
	trace = cache.trace('plus')
	opts = sphere.OracleOptions(seed=scenario.seed, ledger=ledger)
	rows = []
	for node in volume.spot_node_indices(len(trace), ledger['oracle_nodes']):
		closed = volume.closed_form_volume(p, trace.states[node], ledger)
		estimate, stderr = volume.decomposition_volume(trace.octahedra[node], opts.derive(node))
		gap = sphere.circular_gap(closed.lifted, estimate.lifted)
		rows.append({'node': node, 'closed_form': closed.lifted, 'oracle': estimate.lifted, 'stderr': stderr,
					'passed': gap <= ledger['sigma'] * stderr + ledger['identity']})
	edge, stderr = volume.decomposition_volume(trace.octahedra[rows[0]['node']], opts.derive(len(trace)), form='edge')
	edge_ok = sphere.circular_gap(edge.lifted, rows[0]['closed_form']) <= ledger['sigma'] * stderr + ledger['identity']
	return CheckResult('oracle_equivalence', edge_ok and all(r['passed'] for r in rows),
					{'nodes': rows, 'edge_form': {'oracle': edge.lifted, 'stderr': stderr, 'passed': edge_ok}})


def check_gap(p, scenario, cache):
	ledger = scenario.ledger
	areas = volume.AreaFunctions(p, ledger)
	low, high = octa.theta_bounds(p)
	sign = 1 if p.p2 > 0 else -1
	worst = 0.0
	count = ledger['gap_points']
	for k in range(count):
		theta = low + (high - low) * (k + 0.5) / count
		for delta2 in (1, -1):
			s = octa.FlexState(theta, 1, delta2, 1, 1)
			y0 = configspace.y_of_state(p, s, ledger)
			expected = sign * math.pi * areas.area(2, y0)
			worst = max(worst, sphere.circular_gap(volume.gap(p, s, ledger), expected))
	return CheckResult('eps2_gap', worst < ledger['identity'], {'points': 2 * count, 'max_deviation': worst})


def check_endpoint_areas(p, scenario, cache):
	areas = volume.AreaFunctions(p, scenario.ledger)
	values = {}
	for name, y, flat in zip(('y_min', 'y_max'), configspace.y_bounds(p), volume.flat_areas(p)):
		values[name] = {'area': areas.area(2, y), 'expected': flat}
		values[name]['deviation'] = abs(values[name]['area'] - flat)
	worst = max(v['deviation'] for v in values.values())
	return CheckResult('endpoint_areas', worst <= scenario.ledger['endpoint_area'], values)


def bellows_report(p, scenario):
	"""bellows_sweep over the scenario's masks with spot checks on
	ledger['spot_nodes'] nodes per mask and component.
	"""
	ledger = scenario.ledger
	opts = sphere.OracleOptions(points=ledger['spot_points'], seed=scenario.seed, ledger=ledger)
	return volume.bellows_sweep(p, scenario.samples, scenario.components, scenario.masks,
								spot_nodes=ledger['spot_nodes'], opts=opts, ledger=ledger)


def check_bellows(p, scenario, cache):
	report = bellows_report(p, scenario)
	smallest = min(e['spread'] for e in report.entries.values())
	passed = report.confirmed and report.bounds_hold and report.spot_checks_passed
	return CheckResult('bellows', passed, {'masks': len(report), 'smallest_spread': smallest,
					'spot_checks': len(report.spot_checks), 'failed_masks': report.failures()})


def check_q_polynomial(p, scenario, cache):
	ledger = scenario.ledger
	q = volume.derivative_and_Q(p)
	low, high = configspace.y_bounds(p)
	identity = abs(q.c3 + q.c0 - q.sum_identity())
	relative, derivative = 0.0, 0.0
	for k in range(40):
		y = low + (high - low) * (0.1 + 0.8 * k / 39)
		relative = max(relative, abs(q(y) - q.rearranged(y)) / max(1.0, abs(q(y))))
		for j in (1, 2):
			h = 1e-5
			numeric = (q.areas.area(j, y + h) - q.areas.area(j, y - h)) / (2 * h)
			derivative = max(derivative, abs(numeric - q.areas.derivative(j, y)))
	passed = identity < ledger['identity'] and relative < ledger['q_relative'] and derivative < 1e-6 and q.nonvanishing
	return CheckResult('q_polynomial', passed, {'coefficients': [float(c) for c in q.coefficients],
					'sum_identity_error': identity, 'rearranged_error': relative, 'derivative_error': derivative})


def check_lift(p, scenario, cache):
	ledger = scenario.ledger
	detail = {}
	passed = True
	for component in scenario.components:
		profile = volume.volume_profile(p, component, scenario.samples, trace=cache.trace(component), ledger=ledger)
		increment = volume.loop_increment(profile)
		bound = profile.gap - ledger['identity']
		ok = (abs(increment) < ledger['endpoint_area'] and profile.max_jump < math.pi**2
			and profile.spread >= bound and profile.spread > ledger['spread'])
		passed = passed and ok
		detail[component] = {'increment': increment, 'max_jump': profile.max_jump, 'spread': profile.spread, 'gap_bound': bound}
	return CheckResult('branch_lift', passed, detail)


def check_kinds(p, scenario, cache):
	table = elliptic.kind_table(p, ledger=scenario.ledger, series=cache.series('plus'))
	mismatched = [face for face, label in table.items()
				if label.label != elliptic.EXPECTED_KINDS[face] or label.fit.sign != (1 if label.label == 'First' else -1)]
	return CheckResult('kind_table', not mismatched, {'faces': {face: label.asdict() for face, label in sorted(table.items())},
					'mismatched': mismatched})


def check_elliptic(p=None, scenario=None, cache=None):
	"""Identities of the Jacobi functions and the AGM evaluation of K.
	"""
	worst_identity, worst_quarter, worst_k = 0.0, 0.0, 0.0
	previous = None
	monotone = True
	for k in (0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
		K = elliptic.elliptic_K(k)
		worst_k = max(worst_k, abs(K - elliptic.elliptic_K_quadrature(k)))
		if previous is not None and K <= previous: monotone = False
		previous = K
		sn, cn, dn = elliptic.jacobi(K, k)
		worst_quarter = max(worst_quarter, abs(sn - 1), abs(cn), abs(dn - math.sqrt(1 - k**2)))
		for u in np.linspace(-3 * K, 3 * K, 61):
			sn, cn, dn = elliptic.jacobi(float(u), k)
			worst_identity = max(worst_identity, abs(sn**2 + cn**2 - 1), abs(dn**2 + k**2 * sn**2 - 1))
	passed = worst_identity < 1e-12 and worst_quarter < 1e-10 and worst_k < 1e-12 and monotone
	return CheckResult('elliptic', passed, {'identity_error': worst_identity, 'quarter_period_error': worst_quarter,
					'quadrature_error': worst_k, 'monotone': monotone})


def check_schlaefli(p, scenario, cache):
	detail = {}
	passed = True
	for component in scenario.components:
		sign, deviation = volume.schlaefli_check(p, component, ledger=scenario.ledger)
		detail[component] = {'sign': sign, 'deviation': deviation}
		passed = passed and deviation < scenario.ledger['schlaefli']
	return CheckResult('schlaefli', passed, detail)


SUITE = (
	check_edge_lengths, check_bricard, check_links, check_recovery, check_oracle, check_gap,
	check_endpoint_areas, check_bellows, check_q_polynomial, check_lift, check_kinds, check_elliptic,
	check_schlaefli,
)


def run_suite(scenario, suite=SUITE):
	"""Runs every check on the scenario's family.

	:returns: list of CheckResult
	"""
	p = octa.require_valid(octa.ExoticParams(*scenario.params))
	cache = Cache(p, scenario.samples)
	results = []
	for check in suite:
		name = check.__name__[len('check_'):]
		try:
			result = check(p, scenario, cache)
		except errors.ExoflexError as e:
			result = CheckResult(name, False, {'error': '{0}: {1}'.format(type(e).__name__, e)})
		logger.info('%r', result)
		results.append(result)
	return results
