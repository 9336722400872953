#!/usr/bin/env python3

"""Command line front end.

	exoflex validate --params 0.1,0.6,0.2,0.5
	exoflex sweep --samples 512 --out runs/
	exoflex verify --scenario scenario.json --tol oracle_points=1000000

Exit codes: 0 on success, 1 on invalid input, 2 when a check fails and
3 on any other error.
"""

import argparse
import csv
import json
import logging
import os
import sys

from exoflex import bricard, checks, configspace, elliptic, errors, octa, settings, volume


logger = logging.getLogger(__name__)

COMMANDS = ('validate', 'sweep', 'bellows', 'classify', 'verify', 'elliptic-check')

# exit with 2
INVARIANT_ERRORS = (errors.InvariantError, errors.FitError, errors.AmbiguousDetectionError)


def _scenario(args):
	scenario = settings.Scenario.load(args.scenario) if args.scenario else settings.Scenario()
	return scenario.merge(args)


def _params(scenario):
	p = octa.ExoticParams(*scenario.params)
	report = octa.validate_params(p)
	if not report:
		raise errors.ParameterError('invalid parameters {0}: violated {1}'.format(tuple(p), ', '.join(report.violations)))
	return p


def _write_json(out, name, data):
	path = os.path.join(out, name)
	with open(path, 'w', encoding='utf-8') as ofstream:
		json.dump(data, ofstream, indent=2, sort_keys=True)
		ofstream.write('\n')
	logger.info('wrote %s', path)
	return path


def _write_profile(out, profile):
	path = os.path.join(out, 'profile_{0}.csv'.format(profile.trace.component))
	with open(path, 'w', newline='') as ofstream:
		writer = csv.DictWriter(ofstream, fieldnames=volume.PROFILE_COLUMNS, lineterminator='\n')
		writer.writeheader()
		for row in profile.rows(): writer.writerow(row)
	logger.info('wrote %s', path)
	return path


def run_validate(scenario, out):
	p = octa.ExoticParams(*scenario.params)
	report = octa.validate_params(p)
	print(json.dumps({'params': list(p), 'valid': bool(report), 'violations': report.violations}, sort_keys=True))
	if not report:
		raise errors.ParameterError('invalid parameters {0}: violated {1}'.format(tuple(p), ', '.join(report.violations)))
	low, high = octa.theta_bounds(p)
	y_min, y_max = configspace.y_bounds(p)
	logger.info('theta in [%r, %r], y in [%r, %r]', low, high, y_min, y_max)
	return 0


def run_sweep(scenario, out):
	p = _params(scenario)
	for component in scenario.components:
		profile = volume.volume_profile(p, component, scenario.samples, ledger=scenario.ledger)
		_write_profile(out, profile)
		logger.info('%r', profile)
	return 0


def run_bellows(scenario, out):
	p = _params(scenario)
	report = checks.bellows_report(p, scenario)
	_write_json(out, 'bellows.json', report.asdict())
	failed = report.failures()
	if failed:
		raise errors.InvariantError(['bellows'], 'bellows sweep failed under masks: {0}'.format(', '.join(failed)))
	return 0


def _links_at(p, theta):
	o = octa.build(p, octa.FlexState(theta))
	links = {}
	for v in octa.LABELS:
		link = bricard.vertex_link(o, v)
		links[v] = {'neighbours': list(link.neighbours), 'sides': list(link.sides),
					'angles': list(link.angles), 'class': str(link.classify())}
	return links


def run_classify(scenario, out):
	p = _params(scenario)
	witnesses = bricard.exotic_face_check(p, seed=scenario.seed, ledger=scenario.ledger)
	low, high = octa.theta_bounds(p)
	theta = (low + high) / 2
	_write_json(out, 'links.json', {'params': list(p), 'theta': theta, 'links': _links_at(p, theta),
									'witnesses': witnesses.asdict()})
	series = configspace.tangents_along(p, configspace.trace_component(p, 'plus', scenario.samples))
	table = elliptic.kind_table(p, ledger=scenario.ledger, series=series)
	_write_json(out, 'kinds.json', {'params': list(p), 'faces': {face: label.asdict() for face, label in table.items()}})
	failed = [] if witnesses.passed else ['link_witnesses']
	failed += [face for face, label in table.items() if label.label != elliptic.EXPECTED_KINDS[face]]
	if failed: raise errors.InvariantError(failed)
	return 0


def _report(out, name, results):
	data = {'checks': {r.name: r.asdict() for r in results}, 'passed': all(results)}
	_write_json(out, name, data)
	failed = [r.name for r in results if not r.passed]
	if failed: raise errors.InvariantError(failed)
	return 0


def run_verify(scenario, out):
	_params(scenario)
	return _report(out, 'verify.json', checks.run_suite(scenario))


def run_elliptic_check(scenario, out):
	return _report(out, 'elliptic.json', [checks.check_elliptic()])


RUNNERS = {
	'validate': run_validate,
	'sweep': run_sweep,
	'bellows': run_bellows,
	'classify': run_classify,
	'verify': run_verify,
	'elliptic-check': run_elliptic_check,
}


def run(command, scenario, out='.'):
	"""Runs one subcommand and returns its exit code.
	"""
	if command not in RUNNERS:
		raise errors.ParameterError('unknown command: {0!r}'.format(command))
	os.makedirs(out, exist_ok=True)
	logger.info('%s on %r', command, scenario)
	return RUNNERS[command](scenario, out)


class ArgumentParser(argparse.ArgumentParser):
	"""Parser reporting usage errors as ScenarioError instead of exiting.
	"""
	def error(self, message):
		raise errors.ScenarioError('{0}: {1}'.format(self.prog, message))


# options whose value may start with a minus sign
VALUE_OPTIONS = ('--params',)


def join_values(argv):
	"""Rewrites `--params -0.15,...` as `--params=-0.15,...` so argparse
	does not read the value as an option.
	"""
	argv = list(argv)
	joined = []
	i = 0
	while i < len(argv):
		if argv[i] in VALUE_OPTIONS and i + 1 < len(argv):
			joined.append('{0}={1}'.format(argv[i], argv[i + 1]))
			i += 2
		else:
			joined.append(argv[i])
			i += 1
	return joined


def build_parser():
	parser = ArgumentParser(prog='exoflex', description='Exotic flexible octahedra in the 3-sphere.')
	parser.add_argument('-v', '--verbose', action='count', default=0, help='more log output, repeatable')
	parser.add_argument('-q', '--quiet', action='store_true', help='only log errors')
	common = ArgumentParser(add_help=False)
	common.add_argument('--scenario', help='JSON scenario file')
	common.add_argument('--params', help='p1,p2,q1,q2 (default: {0})'.format(','.join(str(x) for x in settings.DEFAULT_PARAMS)))
	common.add_argument('--samples', type=int, help='nodes per component (default: 512)')
	common.add_argument('--seed', type=int, help='random seed (default: 42)')
	common.add_argument('--component', choices=settings.COMPONENT_CHOICES, help='component to trace (default: both)')
	common.add_argument('--out', default='.', help='output directory (default: current directory)')
	common.add_argument('--tol', action='append', metavar='KEY=VAL', help='override a tolerance or oracle knob, repeatable')
	subparsers = parser.add_subparsers(dest='command', metavar='command')
	subparsers.required = True
	for command in COMMANDS:
		subparsers.add_parser(command, parents=[common], help=RUNNERS[command].__name__[len('run_'):].replace('_', ' '))
	return parser


def _configure_logging(args):
	level = logging.WARNING - 10 * args.verbose
	if args.quiet: level = logging.ERROR
	logging.basicConfig(level=max(logging.DEBUG, level), format='%(asctime)s %(name)s %(levelname)s: %(message)s')


def main(argv=None):
	try:
		args = build_parser().parse_args(join_values(sys.argv[1:] if argv is None else argv))
	except errors.ParameterError as e:
		logger.error('%s', e)
		return 1
	_configure_logging(args)
	try:
		return run(args.command, _scenario(args), args.out)
	except errors.ParameterError as e:
		logger.error('%s', e)
		return 1
	except INVARIANT_ERRORS as e:
		logger.error('%s', e)
		return 2
	except Exception as e:
		logger.exception('internal error: %s', e)
		return 3


if __name__ == '__main__':
	sys.exit(main())
