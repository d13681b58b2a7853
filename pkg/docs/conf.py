# egretswarm documentation build configuration file.

import sys
import os

sys.path.insert(0, os.path.abspath('..'))
import egretswarm.version  # NOQA

extensions = [
    'sphinx.ext.todo',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'egretswarm'
copyright = '2026, egretswarm contributors'

# The full version, including alpha/beta/rc tags.
release = egretswarm.version.version
# The short X.Y version.
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'egretswarmdoc'

latex_documents = [
    ('index', 'egretswarm.tex', 'egretswarm documentation',
     'egretswarm contributors', 'manual'),
]

man_pages = [
    ('manpage', 'egretswarm', 'egretswarm documentation',
     ['egretswarm contributors'], 1)
]

texinfo_documents = [
    ('index', 'egretswarm', 'egretswarm documentation',
     'egretswarm contributors', 'egretswarm',
     'Egret swarm optimizer with a reproducible benchmark harness',
     'Miscellaneous'),
]
