#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# multiport documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# Get the project root dir, which is the parent dir of this
cwd = os.getcwd()
project_root = os.path.dirname(cwd)

# Insert the project root dir as the first element in the PYTHONPATH.
# This lets us ensure that the source package is imported, and that its
# version is used.
sys.path.insert(0, project_root)

import multiport

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.mathjax']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'multiport'
copyright = u'multiport developers'

version = multiport.__version__
release = multiport.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'multiportdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_elements = {}

latex_documents = [
  ('index', 'multiport.tex', u'multiport Documentation',
   u'multiport developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'multiport', u'multiport Documentation',
     [u'multiport developers'], 1)
]

# -- Options for Texinfo output ------------------------------------------------

texinfo_documents = [
  ('index', 'multiport', u'multiport Documentation',
   u'multiport developers', 'multiport',
   'Beam-splitter outputs and their SLOCC classes.', 'Scientific'),
]
