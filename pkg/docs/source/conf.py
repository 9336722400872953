# -*- coding: utf-8 -*-
#
# exoflex documentation build configuration file.

import sys
import os

# the package lives two directories up
sys.path.insert(0, os.path.abspath(os.path.join(os.pardir, os.pardir)))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.mathjax', 'sphinx.ext.viewcode']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'exoflex'
copyright = '2026, exoflex developers'

version = '0.1.0'
release = '0.1.0'

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'exoflexdoc'

man_pages = [
    ('index', 'exoflex', 'exoflex Documentation', ['exoflex developers'], 1)
]

autoclass_content = 'both'
