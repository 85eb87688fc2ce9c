#
# License: BSD
#
##############################################################################
# Documentation
##############################################################################

"""
Version number accessible to users of the package.
"""

##############################################################################
# Version
##############################################################################

__version__ = '0.3.0'
