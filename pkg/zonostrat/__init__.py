"""
zonostrat for Python
~~~~~~~~~~~~~~~~~~~~
"""

# pylint: disable=unused-import
from zonostrat.zonostrat import Zonostrat
