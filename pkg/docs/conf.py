# -*- coding: utf-8 -*-
#
# ringlab documentation build configuration file

import sys
import os

sys.path.insert(0, os.path.abspath('../'))
import ringlab  # noqa: E402


extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon'
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'ringlab'
copyright = '2021, ringlab developers'
author = ringlab.__author__

version = ringlab.__version__
release = version

language = 'en'
exclude_patterns = ['_build']
pygments_style = 'monokai'

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'ringlabdoc'

man_pages = [
    (master_doc, 'ringlab', 'ringlab Documentation', [author], 1)
]

napoleon_numpy_docstring = True
autodoc_member_order = 'bysource'
