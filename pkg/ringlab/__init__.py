# -*- coding: utf-8 -*-

"""ringlab: Exact computations with finite rings and their i-reversibility"""

# The following info will be used by setup.py and sphinx documentation
__author__ = 'ringlab developers'
__version__ = '0.3.0'

from ringlab.config import Settings, load_settings  # noqa: E402
from ringlab.ring import Ring, RingValue  # noqa: E402
from ringlab.witness import Verdict, Witness  # noqa: E402
from ringlab.dsl import build, build_endo, parse  # noqa: E402
from ringlab.properties import check_property, verify_witness  # noqa: E402


__all__ = (
    'Ring',
    'RingValue',
    'Settings',
    'Verdict',
    'Witness',
    'build',
    'build_endo',
    'check_property',
    'load_settings',
    'parse',
    'verify_witness',
)
