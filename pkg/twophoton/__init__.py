#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Two photon interferometry: joint spectral amplitudes, loss filters, single
port, two port (Hong-Ou-Mandel) and N00N coincidence traces, a fock state
oracle to validate them, trace analysis and a scenario driven batch front
end.
"""

##############################################################################
# Imports
##############################################################################

from . import exceptions
from . import units
from . import spectral
from . import filters
from . import interferometry
from . import oracle
from . import analysis
from . import scenario
from . import presets
from . import svg
from . import artifacts
from . import behaviours
from . import pipeline
from . import cli

##############################################################################
# Version
##############################################################################

from .version import __version__
