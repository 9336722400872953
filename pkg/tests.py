#!/usr/bin/env python3

import argparse
import itertools
import json
import math
import os
import tempfile
import unittest

#	failure to import any of the modules below indicates failed tests
#	=================================================================
#	modules used by exoflex
import numpy as np
from scipy import special
#	actual exoflex code
import exoflex
from exoflex import errors


####	SETUP STUFF
####	family and sizes shared by the suite
P = exoflex.octa.ExoticParams(0.1, 0.6, 0.2, 0.5)
THETA = 0.7
ALL_SIGNS = [(1, d2, e1, e2) for d2 in (1, -1) for e1 in (1, -1) for e2 in (1, -1)]

E = np.eye(4)

#	two more valid families with other sign patterns
FAMILIES = (exoflex.octa.ExoticParams(-0.15, 0.55, 0.1, 0.45), exoflex.octa.ExoticParams(0.05, 0.7, -0.25, 0.6))

#	sampling oracle: small enough for a quick run, 5 sigma acceptance
ORACLE = exoflex.sphere.OracleOptions(points=10**6, seed=7)
SIGMA = 5

#	ledger for full suite runs
QUICK = {'oracle_points': 2 * 10**5, 'oracle_nodes': 2, 'sigma': SIGMA, 'recover_states': 50, 'gap_points': 10,
		'spot_nodes': 1, 'spot_points': 2**15}


def state(theta=THETA, *signs):
	return exoflex.octa.FlexState(theta, *signs)


#######################################
####        TEST SUITE CODE        ####
#######################################
class SphereTest(unittest.TestCase):
	def testDistance(self):
		self.assertAlmostEqual(exoflex.sphere.dist(E[0], E[0]), 0.0)
		self.assertAlmostEqual(exoflex.sphere.dist(E[0], -E[0]), math.pi)
		self.assertAlmostEqual(exoflex.sphere.dist(E[0], E[1]), math.pi / 2)

	def testDistanceSymmetry(self):
		rng = np.random.default_rng(5)
		for _ in range(20):
			u, v = exoflex.sphere.point(rng.standard_normal(4)), exoflex.sphere.point(rng.standard_normal(4))
			self.assertAlmostEqual(exoflex.sphere.dist(u, v), exoflex.sphere.dist(v, u), places=12)
			self.assertAlmostEqual(exoflex.sphere.dist(u, v) + exoflex.sphere.dist(v, -u), math.pi, places=12)

	def testPointIsNormalized(self):
		u = exoflex.sphere.point(1, 2, 3, 4)
		self.assertAlmostEqual(float(np.linalg.norm(u)), 1.0, places=12)
		self.assertRaises(errors.DomainError, exoflex.sphere.point, 0, 0, 0, 0)
		self.assertRaises(errors.DomainError, exoflex.sphere.point, 1, 2, 3)

	def testTriangleArea(self):
		self.assertAlmostEqual(exoflex.sphere.triangle_area(0, 0, 0), math.pi / 2)
		self.assertAlmostEqual(exoflex.sphere.triangle_area(0.5, 0.5, 0.5), 3 * math.acos(1 / 3) - math.pi)
		self.assertAlmostEqual(exoflex.sphere.triangle_area(0.5, 0.5, 0.5), 0.5512856, places=6)

	def testTriangleAreaIgnoresOrder(self):
		sides = (0.3, -0.2, 0.5)
		area = exoflex.sphere.triangle_area(*sides)
		for permuted in itertools.permutations(sides):
			self.assertAlmostEqual(exoflex.sphere.triangle_area(*permuted), area, places=12)

	def testFlatTriangleHasNoArea(self):
		a, b = 0.4, 0.9
		self.assertAlmostEqual(exoflex.sphere.triangle_area(math.cos(a), math.cos(b), math.cos(a + b)), 0.0, places=6)

	def testTriangleAreaRejectsZeroSide(self):
		self.assertRaises(errors.DomainError, exoflex.sphere.triangle_area, 1.0, 0.5, 0.5)

	def testRightTriangleSide(self):
		self.assertAlmostEqual(exoflex.sphere.right_triangle_side(math.pi / 2, 1.0), 0.0)
		self.assertAlmostEqual(exoflex.sphere.right_triangle_side(0.7, math.pi / 2), math.cos(0.7))
		self.assertAlmostEqual(exoflex.sphere.right_triangle_side(math.pi / 4, math.pi / 4), 0.5 / math.sqrt(0.75))

	def testClampBand(self):
		self.assertEqual(exoflex.sphere.clamp(1 + 1e-10), 1.0)
		self.assertEqual(exoflex.sphere.clamp(-1 - 1e-10), -1.0)
		self.assertRaises(errors.DomainError, exoflex.sphere.clamp, 1 + 1e-6)
		self.assertEqual(exoflex.sphere.sqrt(-1e-12), 0.0)

	def testFlatOctahedronHasStraightAngles(self):
		o = exoflex.octa.Octahedron({'a1': E[0], 'b1': -E[0], 'a2': E[2], 'b2': -E[2], 'a3': E[3], 'b3': -E[3]})
		for edge in exoflex.octa.EDGES:
			self.assertAlmostEqual(exoflex.sphere.oriented_dihedral_angle(o, edge), math.pi, places=9)

	def testEdgeGivenAsString(self):
		o = exoflex.octa.build(P, state())
		self.assertEqual(exoflex.sphere.oriented_dihedral_angle(o, 'a1a2'),
						exoflex.sphere.oriented_dihedral_angle(o, ('a1', 'a2')))

	def testOrthantVolume(self):
		value, stderr = exoflex.sphere.tetra_volume_oriented(E[0], E[1], E[2], E[3], ORACLE)
		self.assertLess(abs(value.lifted - math.pi**2 / 8), SIGMA * stderr)
		mirrored, _ = exoflex.sphere.tetra_volume_oriented(E[1], E[0], E[2], E[3], ORACLE)
		self.assertAlmostEqual(mirrored.lifted, -value.lifted)

	def testRotatedTetrahedron(self):
		rotation, _ = np.linalg.qr(np.random.default_rng(9).standard_normal((4, 4)))
		if np.linalg.det(rotation) < 0: rotation[:, 0] = -rotation[:, 0]
		value, stderr = exoflex.sphere.tetra_volume_oriented(E[0], E[1], E[2], E[3], ORACLE)
		rotated, rotated_stderr = exoflex.sphere.tetra_volume_oriented(*(rotation @ E[i] for i in range(4)), ORACLE.derive(1))
		self.assertLess(abs(rotated.lifted - value.lifted), SIGMA * math.hypot(stderr, rotated_stderr))
		self.assertGreater(rotated.lifted, 0)

	def testOracleIsReproducible(self):
		first, _ = exoflex.sphere.tetra_volume_oriented(E[0], E[1], E[2], E[3], ORACLE.derive(3))
		second, _ = exoflex.sphere.tetra_volume_oriented(E[0], E[1], E[2], E[3], ORACLE.derive(3))
		self.assertEqual(first.lifted, second.lifted)

	def testSobolRoundsUp(self):
		opts = exoflex.sphere.OracleOptions(points=1000, sampler='sobol')
		with self.assertWarns(UserWarning):
			chunks = list(exoflex.sphere.sample_points(opts))
		self.assertEqual(sum(chunk.shape[0] for chunk in chunks), 1024)
		self.assertRaises(errors.ParameterError, exoflex.sphere.OracleOptions, sampler='halton')

	def testVolumeClass(self):
		total = exoflex.sphere.SPHERE_VOLUME
		self.assertAlmostEqual(exoflex.sphere.VolumeClass(-1.0).representative, total - 1.0)
		self.assertAlmostEqual(exoflex.sphere.VolumeClass(total + 0.5).representative, 0.5)
		self.assertAlmostEqual(exoflex.sphere.VolumeClass(0.3).distance(total + 0.2), 0.1)


class OctaTest(unittest.TestCase):
	def testValidParams(self):
		self.assertTrue(exoflex.octa.validate_params(P))

	def testViolationsAreNamed(self):
		self.assertIn('|p1|<|p2|', exoflex.octa.validate_params(exoflex.octa.ExoticParams(0.6, 0.6, 0.2, 0.5)).violations)
		self.assertIn('|q1|<|q2|', exoflex.octa.validate_params(exoflex.octa.ExoticParams(0.1, 0.6, 0.5, 0.5)).violations)
		self.assertIn('p2²+q2²<1', exoflex.octa.validate_params(exoflex.octa.ExoticParams(0.1, 0.9, 0.2, 0.5)).violations)
		self.assertRaises(errors.ParameterError, exoflex.octa.require_valid, exoflex.octa.ExoticParams(0.6, 0.6, 0.2, 0.5))

	def testThetaBounds(self):
		low, high = exoflex.octa.theta_bounds(P)
		self.assertAlmostEqual(low, 0.5235988, places=7)
		self.assertAlmostEqual(high, 0.9272952, places=7)

	def testParse(self):
		self.assertEqual(exoflex.octa.ExoticParams.parse('0.1, 0.6,0.2,0.5'), P)
		self.assertRaises(errors.ParameterError, exoflex.octa.ExoticParams.parse, '0.1,0.6,0.2')

	def testBuildInnerProducts(self):
		for signs in ALL_SIGNS:
			o = exoflex.octa.build(P, state(THETA, *signs))
			for label in exoflex.octa.LABELS:
				self.assertAlmostEqual(float(np.linalg.norm(o[label])), 1.0, places=12)
			for u, v in (('a1', 'a2'), ('a1', 'b2'), ('b1', 'a2'), ('b1', 'b2')):
				self.assertAlmostEqual(float(np.dot(o[u], o[v])), 0.0, places=12)
			self.assertAlmostEqual(float(np.dot(o['a1'], o['a3'])), P.p1, places=12)
			self.assertAlmostEqual(float(np.dot(o['a1'], o['b3'])), P.p1, places=12)
			self.assertAlmostEqual(float(np.dot(o['b1'], o['a3'])), P.p2, places=12)
			self.assertAlmostEqual(float(np.dot(o['a2'], o['a3'])), P.q1, places=12)
			self.assertAlmostEqual(float(np.dot(o['a2'], o['b3'])), -P.q1, places=12)
			self.assertAlmostEqual(float(np.dot(o['b2'], o['b3'])), -P.q2, places=12)

	def testFlippingAllSignsIsARotation(self):
		rotation = np.diag([1.0, -1.0, 1.0, -1.0])
		s = state(THETA, 1, -1, 1, 1)
		o, flipped = exoflex.octa.build(P, s), exoflex.octa.build(P, s.flipped())
		for label in exoflex.octa.LABELS:
			np.testing.assert_allclose(flipped[label], rotation @ o[label], atol=1e-14)

	def testThetaOutsideBounds(self):
		self.assertRaises(errors.ParameterError, exoflex.octa.build, P, state(1.2))
		self.assertRaises(errors.ParameterError, exoflex.octa.FlexState, THETA, 2)

	def testEdgeLengthsStayConstant(self):
		reference = exoflex.octa.edge_lengths(exoflex.octa.build(P, state()))
		for theta in (0.55, 0.8, 0.92):
			for signs in ALL_SIGNS:
				lengths = exoflex.octa.edge_lengths(exoflex.octa.build(P, state(theta, *signs)))
				self.assertLess(lengths.deviation(reference), 1e-12)
		self.assertAlmostEqual(reference['a2a1'], math.pi / 2)

	def testFaceOrientation(self):
		self.assertEqual(exoflex.octa.oriented(('a1', 'a2', 'a3')), ('a1', 'a2', 'a3'))
		self.assertEqual(exoflex.octa.oriented(('a1', 'b2', 'a3')), ('a1', 'a3', 'b2'))
		self.assertEqual(exoflex.octa.oriented(('b1', 'b2', 'a3')), ('b1', 'b2', 'a3'))
		self.assertEqual(len(exoflex.octa.FACES), 8)
		self.assertEqual(len(exoflex.octa.EDGES), 12)

	def testEdgeKey(self):
		self.assertEqual(exoflex.octa.edge_key('a2a1'), ('a1', 'a2'))
		self.assertEqual(exoflex.octa.edge_key('b3', 'a1'), ('a1', 'b3'))
		self.assertRaises(errors.ParameterError, exoflex.octa.edge_key, 'a1b1')

	def testMasks(self):
		all_masks = exoflex.octa.masks()
		self.assertEqual(len(all_masks), 64)
		self.assertEqual(len(set(all_masks)), 64)
		self.assertEqual(exoflex.octa.mask('a1,b3'), frozenset(['a1', 'b3']))
		self.assertEqual(exoflex.octa.mask_key(exoflex.octa.mask('none')), 'none')
		self.assertEqual(exoflex.octa.mask_key(exoflex.octa.mask('b3,a1')), 'a1,b3')
		self.assertRaises(errors.ParameterError, exoflex.octa.mask, 'c1')

	def testAntipodeVariant(self):
		o = exoflex.octa.build(P, state())
		variant = exoflex.octa.antipode_variant(o, 'a1')
		np.testing.assert_array_equal(variant['a1'], -o['a1'])
		np.testing.assert_array_equal(variant['b1'], o['b1'])

	def testNormalizeSingleFlip(self):
		variant = exoflex.octa.normalize_variant(P, 'a1')
		params, relabeling, swapped = variant
		self.assertEqual(params, exoflex.octa.ExoticParams(-0.1, 0.6, 0.2, 0.5))
		self.assertFalse(swapped)
		self.assertEqual(variant.orientation, 1)
		self.assertEqual(variant.state(state(THETA, 1, 1, 1, 1)).signs, (-1, 1, 1, 1))

	def testNormalizeSwap(self):
		variant = exoflex.octa.normalize_variant(P, 'b3')
		self.assertEqual(variant.params, exoflex.octa.ExoticParams(0.2, 0.5, 0.1, 0.6))
		self.assertTrue(variant.swapped_roles)
		self.assertEqual(variant.orientation, -1)
		mapped = variant.state(state(THETA, 1, -1, 1, 1))
		self.assertAlmostEqual(mapped.theta, math.pi / 2 - THETA)
		self.assertEqual(mapped.signs, (1, 1, 1, -1))
		self.assertTrue(exoflex.octa.validate_params(variant.params))

	def testNormalizeEverything(self):
		variant = exoflex.octa.normalize_variant(P, exoflex.octa.LABELS)
		self.assertEqual(variant.params, P)
		self.assertEqual(variant.orientation, 1)
		s = state(THETA, 1, -1, -1, 1)
		mapped = variant.state(s)
		self.assertAlmostEqual(mapped.theta, s.theta, places=14)
		self.assertEqual(mapped.signs, s.signs)


class BricardTest(unittest.TestCase):
	def testCoefficients(self):
		third = math.pi / 3
		for got, expected in zip(exoflex.bricard.biquad_coeffs(third, third, third, third), (1.5, 0, -1.5, 0, 0)):
			self.assertAlmostEqual(got, expected)
		for got, expected in zip(exoflex.bricard.biquad_coeffs(third, math.pi / 2, third, math.pi / 2), (1, 0, -2, 0, 1)):
			self.assertAlmostEqual(got, expected)

	def testIsogramFactorization(self):
		c = exoflex.bricard.biquad_coeffs(math.pi / 3, math.pi / 2, math.pi / 3, math.pi / 2)
		self.assertGreater(c.C**2 - c.A * c.E, 0)

	def testResidualAtZero(self):
		c = exoflex.bricard.BiquadCoeffs(1.0, 2.0, 3.0, 0.0, 0.0)
		self.assertEqual(exoflex.bricard.biquad_residual(c, 0.0, (0.6, 0.8)), 0.0)
		self.assertEqual(exoflex.bricard.projective(math.inf), (1.0, 0.0))

	def testResidualsAlongFamily(self):
		for theta in (0.55, THETA, 0.9):
			for signs in ALL_SIGNS:
				residuals = exoflex.bricard.face_pair_residuals(exoflex.octa.build(P, state(theta, *signs)))
				self.assertEqual(len(residuals), 24)
				self.assertLess(max(abs(r[3]) for r in residuals), 1e-9)

	def testPairRelation(self):
		o = exoflex.octa.build(FAMILIES[0], state(0.8, 1, -1, 1, -1))
		for v in exoflex.octa.LABELS:
			link = exoflex.bricard.vertex_link(o, v)
			for k in range(4):
				coeffs, t1, t2 = exoflex.bricard.pair_relation(o, v, k)
				self.assertEqual((t1, t2), link.pair(k)[1:])
				self.assertLess(abs(exoflex.bricard.biquad_residual(coeffs, t1, t2)), 1e-9)

	def testResidualOffTheCurve(self):
		link = exoflex.bricard.vertex_link(exoflex.octa.build(P, state()), 'a1')
		coeffs, t1, _ = link.pair(0)
		moved = exoflex.sphere.tangent(link.angles[1] + 0.3)
		self.assertGreater(abs(exoflex.bricard.biquad_residual(coeffs, t1, moved)), 1e-6)

	def testLinkSides(self):
		link = exoflex.bricard.vertex_link(exoflex.octa.build(P, state()), 'a2')
		self.assertEqual(link.neighbours, ('a1', 'a3', 'b1', 'b3'))
		self.assertAlmostEqual(math.cos(link.alpha), P.p1 / math.sqrt(1 - P.q1**2))

	def testClassifyQuad(self):
		classify = exoflex.bricard.classify_quad
		self.assertEqual(classify((1.0, 1.0, 1.0, 1.0)), 'Isogram')
		self.assertEqual(classify((1.0, 2.0, math.pi - 1.0, math.pi - 2.0)), 'Antiisogram')
		self.assertEqual(classify((1.0, 1.0, 2.0, 2.0)), 'Deltoid')
		self.assertEqual(classify((1.0, math.pi - 1.0, 2.0, math.pi - 2.0)), 'Antideltoid')
		self.assertEqual(classify((0.5, 1.0, 1.5, 2.5)), 'Generic')
		self.assertRaises(errors.DomainError, classify, (0.0, 1.0, 1.0, 1.0))

	def testClassifyUnderRotation(self):
		sides = [1.0, 1.0, 2.0, 2.0]
		self.assertEqual(exoflex.bricard.classify_quad(sides[1:] + sides[:1]), 'Deltoid')
		sides = [1.0, math.pi - 1.0, 2.0, math.pi - 2.0]
		self.assertEqual(exoflex.bricard.classify_quad(sides[1:] + sides[:1]), 'Antideltoid')

	def testExoticWitnesses(self):
		report = exoflex.bricard.exotic_face_check(P, samples=32)
		self.assertTrue(report.passed, report.failures)
		self.assertEqual((report.nu1, report.nu2), (-1, 1))

	def testBoundaryFamilyIsRejected(self):
		report = exoflex.bricard.exotic_face_check(exoflex.octa.ExoticParams(0.1, 0.6, -0.5, 0.5), samples=16)
		self.assertFalse(report.passed)

	def testInvalidFamilyIsRejected(self):
		report = exoflex.bricard.exotic_face_check(exoflex.octa.ExoticParams(0.1, 0.9, 0.2, 0.5), samples=4)
		self.assertFalse(report.passed)


class ConfigspaceTest(unittest.TestCase):
	def testYOfState(self):
		self.assertAlmostEqual(exoflex.configspace.y_of_state(P, state()), 0.717403, places=5)
		for signs in ALL_SIGNS:
			s = state(THETA, *signs)
			o = exoflex.octa.build(P, s)
			self.assertAlmostEqual(exoflex.configspace.y_of_state(P, s), float(np.dot(o['a1'], o['b1'])), places=12)

	def testYAtThetaMax(self):
		_, high = exoflex.octa.theta_bounds(P)
		self.assertAlmostEqual(exoflex.configspace.y_of_state(P, state(high)), P.p1 / P.p2, places=9)

	def testYBounds(self):
		y_min, y_max = exoflex.configspace.y_bounds(P)
		self.assertAlmostEqual(y_max, 0.796287, places=5)
		self.assertAlmostEqual(y_min, -0.636287, places=5)
		self.assertLess(y_min, P.p1 / P.p2)
		self.assertLess(P.p1 / P.p2, y_max)
		low, _ = exoflex.octa.theta_bounds(P)
		self.assertAlmostEqual(exoflex.configspace.y_of_state(P, state(low)), y_max, places=9)

	def testHyperbola(self):
		for theta in (0.55, THETA, 0.9):
			for delta2 in (1, -1):
				y = exoflex.configspace.y_of_state(P, state(theta, 1, delta2))
				self.assertAlmostEqual(exoflex.configspace.hyperbola_residual(P, exoflex.configspace.x_of_theta(theta), y), 0.0, places=10)

	def testDiagonals(self):
		for signs in ALL_SIGNS:
			s = state(THETA, *signs)
			measured = exoflex.configspace.diagonals(exoflex.octa.build(P, s))
			closed = exoflex.configspace.diagonal_closed_forms(P, s)
			for got, expected in zip(measured, closed):
				self.assertAlmostEqual(got, expected, places=12)
			self.assertEqual(measured.chirality, closed.chirality)
			self.assertAlmostEqual(measured.y3, math.cos(THETA)**2 - math.sin(THETA)**2, places=12)

	def testRecoverState(self):
		rng = np.random.default_rng(1)
		low, high = exoflex.octa.theta_bounds(P)
		for _ in range(50):
			theta = low + (high - low) * (0.01 + 0.98 * rng.random())
			s = state(theta, 1, *(int(x) for x in rng.choice((-1, 1), size=3)))
			recovered = exoflex.configspace.recover_state(P, exoflex.configspace.diagonals(exoflex.octa.build(P, s)))
			self.assertEqual(recovered.signs, s.signs)
			self.assertLess(abs(recovered.theta - s.theta), 1e-10)

	def testRecoverInconsistent(self):
		d = exoflex.configspace.DiagonalCosines(0.99, 0.0, math.cos(2 * THETA))
		self.assertRaises(errors.ParameterError, exoflex.configspace.recover_state, P, d)

	def testTraceQuadrants(self):
		trace = exoflex.configspace.trace_component(P, 'plus', 64)
		self.assertEqual(len(trace), 64)
		runs = []
		for s in trace:
			quadrant = (s.delta2, s.eps2)
			if not runs or runs[-1] != quadrant: runs.append(quadrant)
		self.assertEqual(runs, [(1, 1), (-1, 1), (-1, -1), (1, -1)])
		self.assertEqual({s.eps1 for s in trace}, {1})
		self.assertEqual({exoflex.configspace.component_of(s) for s in trace}, {'plus'})
		self.assertLess(trace.closing, 0.5)

	def testYMonotoneOnBothArcs(self):
		m = 16
		for p in (P,) + FAMILIES:
			for component in ('plus', 'minus'):
				trace = exoflex.configspace.trace_component(p, component, 4 * m)
				y = np.array([exoflex.configspace.y_of_state(p, s) for s in trace])
				y_min, y_max = exoflex.configspace.y_bounds(p)
				# arcs from y_max at node 0 to y_min at node 2m and back
				self.assertTrue(np.all(np.diff(y[:2 * m + 1]) < 0), (p, component))
				self.assertTrue(np.all(np.diff(y[2 * m:]) > 0), (p, component))
				self.assertEqual(int(np.sum(np.abs(y - y_max) < 1e-9)), 1)
				self.assertEqual(int(np.sum(np.abs(y - y_min) < 1e-9)), 1)
				self.assertAlmostEqual(y[0], y_max, places=9)
				self.assertAlmostEqual(y[2 * m], y_min, places=9)

	def testThetaSweptFourTimes(self):
		m = 16
		trace = exoflex.configspace.trace_component(P, 'minus', 4 * m)
		low, high = exoflex.octa.theta_bounds(P)
		for k in range(1, m):
			value = low + (high - low) * (1 - math.cos(math.pi * k / m)) / 2
			self.assertEqual(int(np.sum(np.abs(trace.thetas - value) < 1e-12)), 4)

	def testTraceArguments(self):
		self.assertRaises(errors.ParameterError, exoflex.configspace.trace_component, P, 'plus', 10)
		self.assertRaises(errors.ParameterError, exoflex.configspace.trace_component, P, 'zero', 16)

	def testTangentSeries(self):
		trace = exoflex.configspace.trace_component(P, 'plus', 16)
		series = exoflex.configspace.tangents_along(P, trace)
		self.assertEqual(series.angles.shape, (16, 12))
		self.assertEqual(series.pairs_of('a2a1').shape, (16, 2))
		np.testing.assert_allclose(np.sum(series.pairs**2, axis=-1), 1.0)


class VolumeTest(unittest.TestCase):
	def testAreaDerivative(self):
		areas = exoflex.volume.AreaFunctions(P)
		y_min, y_max = exoflex.configspace.y_bounds(P)
		h = 1e-6
		for y in np.linspace(y_min, y_max, 9)[2:-2]:
			for j in (1, 2):
				numeric = (areas.area(j, y + h) - areas.area(j, y - h)) / (2 * h)
				self.assertAlmostEqual(areas.derivative(j, y), numeric, places=6)
		self.assertRaises(errors.ParameterError, areas.r, 3)

	def testEndpointAreas(self):
		for y in exoflex.configspace.y_bounds(P):
			self.assertAlmostEqual(exoflex.volume.area_A(2, y, P), 0.0, places=6)
		self.assertEqual(exoflex.volume.flat_areas(P), (0.0, 0.0))

	def testEndpointAreaOfGreatCircle(self):
		# the fixed sides add up to more than pi, so y_min closes a great circle
		p = exoflex.octa.ExoticParams(0.1, -0.6, 0.2, 0.5)
		y_min, y_max = exoflex.configspace.y_bounds(p)
		self.assertEqual(exoflex.volume.flat_areas(p), (2 * math.pi, 0.0))
		self.assertAlmostEqual(exoflex.volume.area_A(2, y_min, p), 2 * math.pi, places=6)
		self.assertAlmostEqual(exoflex.volume.area_A(2, y_max, p), 0.0, places=6)
		result = exoflex.checks.check_endpoint_areas(p, exoflex.settings.Scenario(params=tuple(p)), None)
		self.assertTrue(result.passed, result.detail)
		self.assertEqual(exoflex.checks.check_endpoint_areas(P, exoflex.settings.Scenario(), None).detail['y_min']['expected'], 0.0)

	def testClosedFormMatchesOracle(self):
		for signs in ((1, 1, 1, 1), (1, -1, -1, 1)):
			s = state(THETA, *signs)
			closed = exoflex.volume.closed_form_volume(P, s)
			estimate, stderr = exoflex.volume.decomposition_volume(exoflex.octa.build(P, s), ORACLE)
			self.assertLess(exoflex.sphere.circular_gap(closed.lifted, estimate.lifted), SIGMA * stderr)

	def testEdgeDecomposition(self):
		s = state(0.8, 1, 1, -1, 1)
		closed = exoflex.volume.closed_form_volume(P, s)
		estimate, stderr = exoflex.volume.decomposition_volume(exoflex.octa.build(P, s), ORACLE, form='edge')
		self.assertLess(exoflex.sphere.circular_gap(closed.lifted, estimate.lifted), SIGMA * stderr)
		self.assertRaises(errors.ParameterError, exoflex.volume.decomposition_volume, exoflex.octa.build(P, s), ORACLE, 'face')

	def testVariantsMatchOracle(self):
		s = state(THETA, 1, -1, 1, 1)
		o = exoflex.octa.build(P, s)
		for m in ('a1', 'b3', 'a3'):
			variant = exoflex.octa.normalize_variant(P, m)
			closed = variant.orientation * exoflex.volume.closed_form_volume(variant.params, variant.state(s)).lifted
			estimate, stderr = exoflex.volume.decomposition_volume(exoflex.octa.antipode_variant(o, m), ORACLE.derive(len(m)))
			self.assertLess(exoflex.sphere.circular_gap(closed, estimate.lifted), SIGMA * stderr, m)

	def testGap(self):
		areas = exoflex.volume.AreaFunctions(P)
		for delta2 in (1, -1):
			s = state(THETA, 1, delta2)
			y = exoflex.configspace.y_of_state(P, s)
			expected = math.pi * areas.area(2, y)
			self.assertLess(exoflex.sphere.circular_gap(exoflex.volume.gap(P, s), expected), 1e-9)

	def testQPolynomial(self):
		q = exoflex.volume.derivative_and_Q(P)
		self.assertTrue(q.nonvanishing)
		self.assertAlmostEqual(q.c3 + q.c0, q.sum_identity(), places=12)
		self.assertAlmostEqual(q.c0, 0.0187300, places=6)
		y_min, y_max = exoflex.configspace.y_bounds(P)
		for y in np.linspace(y_min, y_max, 11)[1:-1]:
			self.assertLess(abs(q(y) - q.rearranged(y)), 1e-8 * max(1.0, abs(q(y))))

	def testLift(self):
		total = exoflex.sphere.SPHERE_VOLUME
		lifted = exoflex.volume.lift([1.0, 1.1 + total, 1.2 - total])
		np.testing.assert_allclose(lifted, [1.0, 1.1, 1.2])

	def testProfile(self):
		profile = exoflex.volume.volume_profile(P, 'plus', 128)
		self.assertEqual(len(profile), 128)
		self.assertEqual(len(list(profile.rows())), 128)
		self.assertGreater(profile.spread, 1e-3)
		self.assertLess(profile.max_jump, math.pi**2)
		self.assertAlmostEqual(exoflex.volume.loop_increment(profile), 0.0, places=6)
		row = next(profile.rows())
		self.assertEqual(tuple(row), exoflex.volume.PROFILE_COLUMNS)

	def testAllAntipodesKeepTheProfile(self):
		trace = exoflex.configspace.trace_component(P, 'plus', 32)
		profile = exoflex.volume.volume_profile(P, 'plus', 32, trace=trace)
		variant = exoflex.volume.variant_profile(P, exoflex.octa.LABELS, trace)
		for a, b in zip(profile.values, variant.values):
			self.assertLess(exoflex.sphere.circular_gap(a, b), 1e-9)

	def testSingleFlipMovesComponent(self):
		trace = exoflex.configspace.trace_component(P, 'plus', 32)
		variant = exoflex.volume.variant_profile(P, 'a1', trace)
		flipped = exoflex.volume.volume_profile(exoflex.octa.ExoticParams(-0.1, 0.6, 0.2, 0.5), 'minus', 32)
		self.assertAlmostEqual(variant.spread, flipped.spread, places=9)

	def testBellowsOnSomeMasks(self):
		report = exoflex.volume.bellows_sweep(P, 32, masks=['none', 'a1', 'b3', 'a1,a3', 'a1,a2,a3,b1,b2,b3'])
		self.assertEqual(len(report), 5)
		self.assertTrue(report.confirmed)
		self.assertEqual(report.asdict()['masks']['a1,a3']['verdict'], 'nonconstant')

	def testBellowsOnAllMasks(self):
		report = exoflex.volume.bellows_sweep(P, 32)
		self.assertEqual(len(report), 64)
		self.assertTrue(report.confirmed)
		self.assertTrue(report.bounds_hold, report.failures())
		self.assertEqual(report.failures(), [])
		for entry in report.entries.values():
			for summary in entry['components'].values():
				self.assertGreater(summary['spread'], 1e-3)
				self.assertGreaterEqual(summary['spread'], summary['gap'] - 1e-6)
		summary = report.entries['none']['components']['plus']
		self.assertLess(summary['max_A2'], math.pi)
		self.assertAlmostEqual(summary['gap'], math.pi * summary['max_A2'], places=12)

	def testProfileGapWrapsAroundSphere(self):
		trace = exoflex.configspace.trace_component(P, 'plus', 8)
		profile = exoflex.volume.VolumeProfile(trace, np.zeros(8), np.zeros(8), (np.zeros(8), [0.2, 6.0] + [0.0] * 6))
		self.assertAlmostEqual(profile.gap, math.pi * (2 * math.pi - 6.0))
		self.assertAlmostEqual(profile.summary()['max_A2'], 6.0)

	def testBellowsBounds(self):
		report = exoflex.volume.BellowsReport(P)
		report.add('small', {'plus': {'min': 0.0, 'max': 1e-4, 'spread': 1e-4, 'gap': 0.0}})
		report.add('below_gap', {'plus': {'min': 0.0, 'max': 2.0, 'spread': 2.0, 'gap': math.pi}})
		report.add('fine', {'plus': {'min': 0.0, 'max': 4.0, 'spread': 4.0, 'gap': math.pi}})
		self.assertTrue(report.confirmed)
		self.assertFalse(report.bounds_hold)
		self.assertEqual(report.failures(), ['below_gap', 'small'])
		report.spot_checks.append({'mask': 'fine', 'passed': False})
		self.assertFalse(report.spot_checks_passed)
		self.assertEqual(report.failures(), ['below_gap', 'fine', 'small'])

	def testSpotChecks(self):
		opts = exoflex.sphere.OracleOptions(points=2 * 10**5, seed=11)
		report = exoflex.volume.bellows_sweep(P, 16, components=('plus',), masks=['b1,b2'], spot_nodes=1, opts=opts,
											ledger=exoflex.settings.Ledger({'sigma': SIGMA}))
		self.assertEqual(len(report.spot_checks), 1)
		self.assertTrue(report.spot_checks_passed, report.spot_checks)

	def testSchlaefli(self):
		for component in ('plus', 'minus'):
			_, deviation = exoflex.volume.schlaefli_check(P, component, points=4)
			self.assertLess(deviation, 1e-4)


class EllipticTest(unittest.TestCase):
	def testAgm(self):
		self.assertAlmostEqual(exoflex.elliptic.agm(24, 6), 13.458171481725615, places=12)
		self.assertEqual(exoflex.elliptic.agm(2.0, 2.0), 2.0)
		self.assertRaises(errors.DomainError, exoflex.elliptic.agm, 1.0, 0.0)

	def testCompleteIntegral(self):
		for k in (0.0, 0.3, 0.8, 0.99):
			self.assertAlmostEqual(exoflex.elliptic.elliptic_K(k), float(special.ellipk(k**2)), places=12)
			self.assertAlmostEqual(exoflex.elliptic.elliptic_K_quadrature(k), float(special.ellipk(k**2)), places=10)
		self.assertAlmostEqual(exoflex.elliptic.elliptic_K(0.0), math.pi / 2)
		self.assertRaises(errors.DomainError, exoflex.elliptic.elliptic_K, 1.0)

	def testJacobiAgainstScipy(self):
		for k in (0.0, 0.4, 0.9):
			for u in (-2.5, -0.3, 0.0, 0.7, 1.9, 5.0):
				sn, cn, dn, _ = special.ellipj(u, k**2)
				got = exoflex.elliptic.jacobi(u, k)
				for a, b in zip(got, (sn, cn, dn)):
					self.assertAlmostEqual(a, float(b), places=11)

	def testQuarterPeriod(self):
		modulus = exoflex.elliptic.EllipticModulus(0.6)
		sn, cn, dn = exoflex.elliptic.jacobi(modulus.K, modulus.k)
		self.assertAlmostEqual(sn, 1.0, places=10)
		self.assertAlmostEqual(cn, 0.0, places=10)
		self.assertAlmostEqual(dn, modulus.k_prime, places=10)

	def testFaceEdges(self):
		self.assertEqual(exoflex.elliptic.face_edges('a1a2a3'), {'t1': ('a2', 'a3'), 't2': ('a1', 'a3'), 't3': ('a1', 'a2')})
		self.assertRaises(errors.ParameterError, exoflex.elliptic.face_tuple, 'a1a2b2')

	def testKindTable(self):
		table = exoflex.elliptic.kind_table(P, n=256)
		self.assertEqual({face: label.label for face, label in table.items()}, exoflex.elliptic.EXPECTED_KINDS)
		for label in table.values():
			self.assertLess(label.fit.residual, 1e-8)
			self.assertEqual(label.fit.sign, 1 if label.label == 'First' else -1)
		self.assertIsNotNone(table['a1a2a3'].k_prime_estimate)

	def testShuffledFitFails(self):
		series = exoflex.configspace.tangents_along(P, exoflex.configspace.trace_component(P, 'plus', 128))
		permutation = np.random.default_rng(3).permutation(128)
		self.assertRaises(errors.FitError, exoflex.elliptic.structural_fit, series, 'a1a2a3', None, None, permutation)


class SettingsTest(unittest.TestCase):
	def testOverride(self):
		ledger = exoflex.settings.Ledger()
		ledger.override('fit', '1e-7')
		self.assertEqual(ledger['fit'], 1e-7)
		self.assertEqual(ledger.changed(), {'fit': 1e-7})
		ledger.override('oracle_points', '1000')
		self.assertEqual(ledger['oracle_points'], 1000)

	def testBadOverrides(self):
		ledger = exoflex.settings.Ledger()
		self.assertRaises(errors.ScenarioError, ledger.override, 'nope', 1)
		self.assertRaises(errors.ScenarioError, ledger.override, 'oracle_points', '1.5')
		self.assertRaises(errors.ScenarioError, ledger.override, 'fit', 'small')
		self.assertRaises(errors.ScenarioError, exoflex.settings.parse_override, 'fit')
		self.assertRaises(errors.ScenarioError, ledger.override, 'spot_nodes', '0.5')

	def testNegativeSeed(self):
		self.assertRaises(errors.ScenarioError, exoflex.settings.Scenario, seed=-1)
		scenario = exoflex.settings.Scenario()
		args = argparse.Namespace(params=None, samples=None, seed=-3, component=None, tol=None)
		self.assertRaises(errors.ScenarioError, scenario.merge, args)

	def testScenarioFile(self):
		with tempfile.TemporaryDirectory() as directory:
			path = os.path.join(directory, 'scenario.json')
			with open(path, 'w') as ofstream:
				json.dump({'params': {'p1': 0.1, 'p2': 0.6, 'q1': 0.2, 'q2': 0.5}, 'samples': 64,
						'masks': ['a1'], 'tolerances': {'gap_points': 5}}, ofstream)
			scenario = exoflex.settings.Scenario.load(path)
		self.assertEqual(scenario.params, tuple(P))
		self.assertEqual(scenario.samples, 64)
		self.assertEqual(scenario.ledger['gap_points'], 5)
		args = argparse.Namespace(params=None, samples=None, seed=3, component='minus', tol=['fit=1e-6'])
		scenario.merge(args)
		self.assertEqual((scenario.seed, scenario.components), (3, ('minus',)))
		self.assertEqual(scenario.ledger['fit'], 1e-6)

	def testBrokenScenario(self):
		with tempfile.TemporaryDirectory() as directory:
			path = os.path.join(directory, 'scenario.json')
			with open(path, 'w') as ofstream:
				ofstream.write('{"params": [0.1, 0.6], "colour": 1}')
			self.assertRaises(errors.ScenarioError, exoflex.settings.Scenario.load, path)
			self.assertRaises(errors.ScenarioError, exoflex.settings.Scenario.load, os.path.join(directory, 'missing.json'))


class ChecksTest(unittest.TestCase):
	def testEllipticCheck(self):
		self.assertTrue(exoflex.checks.check_elliptic())

	def testQuickSuite(self):
		ledger = exoflex.settings.Ledger({'recover_states': 50, 'gap_points': 10})
		scenario = exoflex.settings.Scenario(samples=64, ledger=ledger)
		suite = (exoflex.checks.check_edge_lengths, exoflex.checks.check_bricard, exoflex.checks.check_links,
				exoflex.checks.check_recovery, exoflex.checks.check_gap, exoflex.checks.check_endpoint_areas,
				exoflex.checks.check_q_polynomial)
		results = exoflex.checks.run_suite(scenario, suite)
		self.assertEqual(len(results), len(suite))
		for result in results:
			self.assertTrue(result.passed, (result.name, result.detail))
		json.dumps([r.asdict() for r in results])

	def testFullSuiteOnEveryFamily(self):
		for p in (P,) + FAMILIES:
			scenario = exoflex.settings.Scenario(params=tuple(p), samples=128, ledger=exoflex.settings.Ledger(QUICK))
			results = exoflex.checks.run_suite(scenario)
			self.assertEqual(len(results), len(exoflex.checks.SUITE))
			for result in results:
				self.assertTrue(result.passed, (tuple(p), result.name, result.detail))
			bellows = next(r for r in results if r.name == 'bellows')
			self.assertEqual(bellows.detail['masks'], 64)
			self.assertEqual(bellows.detail['spot_checks'], 128)

	def testBellowsRunsSpotChecks(self):
		ledger = exoflex.settings.Ledger(dict(QUICK, spot_nodes=2))
		scenario = exoflex.settings.Scenario(samples=16, masks=['a1', 'b2,b3'], ledger=ledger)
		report = exoflex.checks.bellows_report(P, scenario)
		self.assertEqual(len(report.spot_checks), 2 * 2 * 2)
		self.assertTrue(report.spot_checks_passed, report.spot_checks)
		self.assertEqual(report.failures(), [])

	def testSuiteRefusesInvalidParams(self):
		scenario = exoflex.settings.Scenario(params=(0.6, 0.6, 0.2, 0.5))
		self.assertRaises(errors.ParameterError, exoflex.checks.run_suite, scenario)


class CliTest(unittest.TestCase):
	def testValidateExitCodes(self):
		self.assertEqual(exoflex.cli.main(['-q', 'validate', '--params', '0.1,0.6,0.2,0.5']), 0)
		self.assertEqual(exoflex.cli.main(['-q', 'validate', '--params', '0.6,0.6,0.2,0.5']), 1)
		self.assertEqual(exoflex.cli.main(['-q', 'validate', '--tol', 'nope=1']), 1)

	def testNegativeFirstParameter(self):
		self.assertEqual(exoflex.cli.main(['-q', 'validate', '--params', '-0.15,0.55,0.1,0.45']), 0)
		self.assertEqual(exoflex.cli.main(['-q', 'validate', '--params=0.05,0.7,-0.25,0.6']), 0)
		self.assertEqual(exoflex.cli.join_values(['validate', '--params', '-1,2', '--seed', '3']),
						['validate', '--params=-1,2', '--seed', '3'])

	def testUsageErrorsAreInvalidInput(self):
		self.assertEqual(exoflex.cli.main(['-q', 'validate', '--samples', 'abc']), 1)
		self.assertEqual(exoflex.cli.main(['-q', 'frobnicate']), 1)
		self.assertEqual(exoflex.cli.main([]), 1)
		self.assertEqual(exoflex.cli.main(['-q', 'validate', '--seed', '-1']), 1)
		self.assertRaises(errors.ScenarioError, exoflex.cli.build_parser().parse_args, ['sweep', '--component', 'up'])

	def testDetectionFailureIsInvariantFailure(self):
		with tempfile.TemporaryDirectory() as out:
			argv = ['-q', 'classify', '--samples', '16', '--tol', 'degenerate=0', '--tol', 'ambiguous=1', '--out', out]
			self.assertEqual(exoflex.cli.main(argv), 2)

	def testClassifyCommand(self):
		with tempfile.TemporaryDirectory() as out:
			self.assertEqual(exoflex.cli.main(['-q', 'classify', '--samples', '256', '--out', out]), 0)
			with open(os.path.join(out, 'links.json')) as ifstream:
				links = json.load(ifstream)
			with open(os.path.join(out, 'kinds.json')) as ifstream:
				kinds = json.load(ifstream)
		self.assertEqual(sorted(links['links']), sorted(exoflex.octa.LABELS))
		self.assertTrue(links['witnesses']['passed'])
		self.assertEqual({face: entry['label'] for face, entry in kinds['faces'].items()}, exoflex.elliptic.EXPECTED_KINDS)

	def testVerifyCommand(self):
		with tempfile.TemporaryDirectory() as out:
			path = os.path.join(out, 'scenario.json')
			with open(path, 'w') as ofstream:
				json.dump({'params': list(FAMILIES[1]), 'masks': ['none', 'a1,b3'], 'tolerances': QUICK}, ofstream)
			self.assertEqual(exoflex.cli.main(['-q', 'verify', '--scenario', path, '--samples', '128', '--out', out]), 0)
			with open(os.path.join(out, 'verify.json')) as ifstream:
				report = json.load(ifstream)
		self.assertTrue(report['passed'])
		self.assertEqual(len(report['checks']), len(exoflex.checks.SUITE))

	def testSweepIsReproducible(self):
		with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
			for out in (first, second):
				self.assertEqual(exoflex.cli.main(['-q', 'sweep', '--samples', '16', '--component', 'plus', '--out', out]), 0)
			with open(os.path.join(first, 'profile_plus.csv'), 'rb') as ifstream:
				content = ifstream.read()
			with open(os.path.join(second, 'profile_plus.csv'), 'rb') as ifstream:
				self.assertEqual(content, ifstream.read())
		lines = content.decode().splitlines()
		self.assertEqual(len(lines), 17)
		self.assertEqual(lines[0], ','.join(exoflex.volume.PROFILE_COLUMNS))

	def testEllipticCheckCommand(self):
		with tempfile.TemporaryDirectory() as out:
			self.assertEqual(exoflex.cli.main(['-q', 'elliptic-check', '--out', out]), 0)
			with open(os.path.join(out, 'elliptic.json')) as ifstream:
				self.assertTrue(json.load(ifstream)['passed'])

	def testBellowsCommand(self):
		with tempfile.TemporaryDirectory() as out:
			path = os.path.join(out, 'scenario.json')
			with open(path, 'w') as ofstream:
				json.dump({'masks': ['none', 'b2', 'a1,b3']}, ofstream)
			self.assertEqual(exoflex.cli.main(['-q', 'bellows', '--scenario', path, '--samples', '16', '--out', out]), 0)
			with open(os.path.join(out, 'bellows.json')) as ifstream:
				report = json.load(ifstream)
		self.assertEqual(sorted(report['masks']), ['a1,b3', 'b2', 'none'])
		self.assertTrue(all(entry['verdict'] == 'nonconstant' for entry in report['masks'].values()))


if __name__ == '__main__':
	unittest.main()
