#!/usr/bin/env python3

"""Tolerance ledger and scenario files.

Every numerical threshold used by exoflex is read from a :class:`Ledger`.
Library functions take an optional ledger and fall back to :data:`default`.

A scenario file is a JSON document, for example:

	{
		"params": [0.1, 0.6, 0.2, 0.5],
		"samples": 512,
		"seed": 42,
		"component": "both",
		"masks": ["none", "a1", "a1,b3"],
		"tolerances": {"oracle_points": 1000000}
	}

All keys are optional.
"""

import json
import logging

from exoflex import errors


logger = logging.getLogger(__name__)


DEFAULTS = {
	'identity': 1e-9,
	'roundtrip': 1e-12,
	'recovery': 1e-10,
	'clamp': 1e-9,
	'snap': 1e-14,
	'classify': 1e-9,
	'degenerate': 1e-7,
	'ambiguous': 1e-5,
	'endpoint_area': 1e-6,
	'fit': 1e-8,
	'sigma': 4.0,
	'nonconstant': 1e-6,
	'spread': 1e-3,
	'schlaefli': 1e-4,
	'q_relative': 1e-8,
	'gram': 1e-12,
	'oracle_points': 10**7,
	'oracle_nodes': 20,
	'spot_nodes': 2,
	'spot_points': 2**16,
	'recover_states': 1000,
	'gap_points': 50,
	'chunk': 2**18,
}

# knobs that count things rather than measure them
INTEGER_KEYS = ('oracle_points', 'oracle_nodes', 'spot_nodes', 'spot_points', 'recover_states', 'gap_points', 'chunk')

DEFAULT_PARAMS = (0.1, 0.6, 0.2, 0.5)
COMPONENT_CHOICES = ('plus', 'minus', 'both')


def _coerce(key, value):
	try:
		value = float(value)
	except (TypeError, ValueError):
		raise errors.ScenarioError('tolerance {0} is not a number: {1!r}'.format(key, value))
	if value < 0 or value != value:
		raise errors.ScenarioError('tolerance {0} must be non-negative: {1!r}'.format(key, value))
	if key in INTEGER_KEYS:
		if value != int(value) or value < 1:
			raise errors.ScenarioError('{0} must be a positive integer: {1!r}'.format(key, value))
		value = int(value)
	return value


class Ledger():
	"""Named tolerances and oracle knobs.

	:param overrides: values replacing the defaults
	:type overrides: dict
	"""
	def __init__(self, overrides=None):
		self._values = dict(DEFAULTS)
		for key, value in (overrides or {}).items(): self.override(key, value)

	def __getitem__(self, key):
		return self._values[key]

	def __contains__(self, key):
		return key in self._values

	def __repr__(self):
		return 'Ledger({0!r})'.format(self.changed())

	def override(self, key, value):
		"""Replaces one value. Strings are parsed, so `--tol fit=1e-7` works as is.
		"""
		if key not in DEFAULTS:
			raise errors.ScenarioError('unknown tolerance key: {0}'.format(key))
		self._values[key] = _coerce(key, value)
		logger.debug('tolerance %s set to %r', key, self._values[key])
		return self

	def changed(self):
		"""Returns only the entries that differ from the defaults.
		"""
		return {k: v for k, v in self._values.items() if DEFAULTS[k] != v}

	def asdict(self):
		return dict(self._values)


default = Ledger()


def parse_params(text):
	"""Parses `p1,p2,q1,q2`.

	:returns: tuple of four floats
	"""
	parts = [part.strip() for part in str(text).split(',')]
	if len(parts) != 4:
		raise errors.ScenarioError('expected four comma separated parameters, got: {0!r}'.format(text))
	try:
		return tuple(float(part) for part in parts)
	except ValueError:
		raise errors.ScenarioError('parameters must be numbers: {0!r}'.format(text))


def parse_override(text):
	"""Parses one `KEY=VAL` command line override.
	"""
	key, sep, value = str(text).partition('=')
	if not sep or not key.strip():
		raise errors.ScenarioError('expected KEY=VAL, got: {0!r}'.format(text))
	return key.strip(), value.strip()


def _seed(value):
	value = int(value)
	if value < 0:
		raise errors.ScenarioError('seed must be non-negative: {0}'.format(value))
	return value


class Scenario():
	"""Everything one command needs: parameters, node count, seed,
	components, masks and the tolerance ledger.
	"""
	def __init__(self, params=DEFAULT_PARAMS, samples=512, seed=42, component='both', masks=None, ledger=None):
		self.params = tuple(float(x) for x in params)
		if len(self.params) != 4:
			raise errors.ScenarioError('expected four parameters, got {0}'.format(len(self.params)))
		self.samples = int(samples)
		self.seed = _seed(seed)
		if component not in COMPONENT_CHOICES:
			raise errors.ScenarioError('component must be one of {0}: {1!r}'.format(', '.join(COMPONENT_CHOICES), component))
		self.component = component
		self.masks = None if masks is None else list(masks)
		self.ledger = ledger if ledger is not None else Ledger()

	def __repr__(self):
		return 'Scenario(params={0!r}, samples={1}, seed={2}, component={3!r})'.format(self.params, self.samples, self.seed, self.component)

	@property
	def components(self):
		if self.component == 'both': return ('plus', 'minus')
		return (self.component,)

	@classmethod
	def load(cls, path):
		"""Reads a JSON scenario file.
		"""
		try:
			with open(path) as ofstream:
				data = json.load(ofstream)
		except (OSError, ValueError) as e:
			raise errors.ScenarioError('cannot read scenario {0}: {1}'.format(path, e))
		if not isinstance(data, dict):
			raise errors.ScenarioError('scenario {0} must contain a JSON object'.format(path))
		unknown = set(data) - {'params', 'samples', 'seed', 'component', 'masks', 'tolerances'}
		if unknown:
			raise errors.ScenarioError('unknown scenario keys: {0}'.format(', '.join(sorted(unknown))))
		params = data.get('params', DEFAULT_PARAMS)
		if isinstance(params, dict):
			try:
				params = [params[k] for k in ('p1', 'p2', 'q1', 'q2')]
			except KeyError as e:
				raise errors.ScenarioError('scenario params miss {0}'.format(e))
		elif isinstance(params, str):
			params = parse_params(params)
		try:
			return cls(params=params,
					samples=data.get('samples', 512),
					seed=data.get('seed', 42),
					component=data.get('component', 'both'),
					masks=data.get('masks'),
					ledger=Ledger(data.get('tolerances', {})))
		except (TypeError, ValueError) as e:
			raise errors.ScenarioError('malformed scenario {0}: {1}'.format(path, e))

	def merge(self, args):
		"""Applies command line flags on top of this scenario.
		Flags left at None keep the scenario value.
		"""
		if getattr(args, 'params', None) is not None: self.params = parse_params(args.params)
		if getattr(args, 'samples', None) is not None: self.samples = int(args.samples)
		if getattr(args, 'seed', None) is not None: self.seed = _seed(args.seed)
		if getattr(args, 'component', None) is not None:
			if args.component not in COMPONENT_CHOICES:
				raise errors.ScenarioError('unknown component: {0!r}'.format(args.component))
			self.component = args.component
		for text in getattr(args, 'tol', None) or []:
			self.ledger.override(*parse_override(text))
		return self
