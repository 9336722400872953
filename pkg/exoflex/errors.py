#!/usr/bin/env python3

"""This module contains custom exceptions that are raised by exoflex.

If your program should catch all exceptions raised by exoflex and
does not need to handle them specifically you can use following code:

	from exoflex.errors import *

	try:
		# your code...
	except ExoflexError as e:
		# your error handling code...
	finally:
		# closing code...
"""


class ExoflexError(Exception):
	"""Base exception for all errors
	raised by exoflex.
	"""
	pass


class ParameterError(ExoflexError):
	"""Exception raised when parameters, flex states, masks or
	node counts passed to exoflex are invalid.
	"""
	pass


class ScenarioError(ParameterError):
	"""Exception raised when a scenario file or a command line
	override cannot be used.
	"""
	pass


class DomainError(ExoflexError):
	"""Exception raised when an argument of arccos or of a square root
	falls outside its clamp band, or a denominator vanishes.
	"""
	pass


class DegenerateFaceError(ExoflexError):
	"""Exception raised when the vertices of a face are linearly dependent.
	"""
	def __init__(self, face, gram):
		self.face = face
		self.gram = gram
		super().__init__('degenerate face {0}: gram volume {1!r}'.format(''.join(face), gram))


class AmbiguousDetectionError(ExoflexError):
	"""Exception raised when a dihedral angle comes close to 0 or pi
	without reaching the degeneracy threshold.
	"""
	pass


class FitError(ExoflexError):
	pass


class ApexSelectionError(ExoflexError):
	pass


class InvariantError(ExoflexError):
	"""Exception raised when a verification check fails.

	:param failed: names of the failing checks
	:type failed: list
	"""
	def __init__(self, failed, message=''):
		self.failed = list(failed)
		super().__init__(message or 'failed checks: {0}'.format(', '.join(self.failed)))
