# flake8: noqa

import exoflex.errors as errors
import exoflex.settings as settings
import exoflex.sphere as sphere
import exoflex.octa as octa
import exoflex.bricard as bricard
import exoflex.configspace as configspace
import exoflex.volume as volume
import exoflex.elliptic as elliptic
import exoflex.checks as checks
import exoflex.cli as cli


__version__ = '0.1.0'
