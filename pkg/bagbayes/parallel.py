# -*- coding: utf-8 -*-
u"""Ordered thread-pool map for independent fits

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from concurrent.futures import ThreadPoolExecutor
import bagbayes


def map_ordered(fn, items, parallelism=None):
    """Apply fn to every item, results in item order

    numpy releases the GIL inside its linear algebra, so threads speed up
    per-component posterior fits.

    Args:
      * fn: callable of one argument
      * items: iterable
      * parallelism: worker count (default ``bagbayes.cfg.parallelism``)

    Returns:
      * list of results
    """
    items = list(items)
    n = parallelism or bagbayes.cfg.parallelism
    if n <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as executor:
        return list(executor.map(fn, items))
