# -*- coding: utf-8 -*-

u""":mod:`bagbayes` package

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""

from __future__ import absolute_import, division, print_function
import pkg_resources
from pykern import pkconfig

# Set the version number if one exists
try:
    # We only have a version once the package is installed.
    __version__ = pkg_resources.get_distribution('bagbayes').version
except pkg_resources.DistributionNotFound:
    __version__ = '0.0.0'

cfg = pkconfig.init(
    seed=(None, int, 'overrides root_seed of every run config'),
    parallelism=(1, int, 'default worker count for component and replicate fits'),
)
