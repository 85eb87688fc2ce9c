# -*- coding: utf-8 -*-
#
# License: BSD
#
# Sphinx configuration for the twophoton documentation. The package itself
# is imported by autodoc, so numpy and py_trees must be installed.
#
#   $ pip install -e .[docs]
#   $ sphinx-build -b html doc doc/html
#

##############################################################################
# Imports
##############################################################################

import os
import sys

import sphinx_rtd_theme

##############################################################################
# Paths
##############################################################################

project_dir = os.path.abspath(
    os.path.join(
        os.path.abspath(__file__), os.pardir, os.pardir
    )
)

sys.path.insert(0, project_dir)

import twophoton.version  # noqa: E402

##############################################################################
# Project Information
##############################################################################

project = u'twophoton'
author = u'The twophoton developers'
copyright = u'2026, ' + author

# The short X.Y version and the full release.
release = twophoton.version.__version__
version = ".".join(release.split(".")[:2])

##############################################################################
# Extensions
##############################################################################

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinxarg.ext',
    'sphinx_autodoc_typehints',
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'py_trees': ('https://py-trees.readthedocs.io/en/release-2.2.x', None),
    'numpy': ('https://numpy.org/doc/stable', None),
}

# True to use the :ivar: role for instance variables.
napoleon_use_ivar = True

##############################################################################
# Sources
##############################################################################

master_doc = 'index'
source_suffix = '.rst'
exclude_patterns = ['.build', 'html']
pygments_style = 'sphinx'

##############################################################################
# Output
##############################################################################

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_show_copyright = False
html_show_sphinx = False
htmlhelp_basename = 'twophoton_doc'

man_pages = [
    ('index', 'twophoton', u'twophoton Documentation', [author], 1)
]
