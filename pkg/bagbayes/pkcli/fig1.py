# -*- coding: utf-8 -*-
u"""Standard vs bagged posteriors of the Gaussian location model on several datasets

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from pykern.pkcollections import PKDict
import pandas

_COMMAND = 'fig1'


def default_command(*overrides, config=None):
    """Write datasets.csv, pairs.csv & summary.json

    Args:
        overrides (str): key=value settings applied over the config file
        config (str): JSON run configuration

    Keys:
    """
    from bagbayes import experiments, overlap, randstream, runconfig, simgen

    c = runconfig.load(_COMMAND, config, overrides)
    r = experiments.location_pairs_experiment(
        simgen.LocationScenario(true_mean=c.true_mean, true_sd=c.true_sd, model_v=c.model_v),
        c.n,
        c.num_datasets,
        c.alpha,
        randstream.SeedPath(c.root_seed),
        m=c.m,
        b=c.b,
        v0_inv=[[c.prior_precision]] if c.prior_precision else None,
        parallelism=c.parallelism,
    )
    for n, v in ('datasets.csv', r.datasets), ('pairs.csv', r.pairs):
        p = runconfig.output_path(c, n)
        pandas.DataFrame(v).to_csv(str(p), index=False)
        runconfig.write_sidecar(_COMMAND, c, p)
    runconfig.write_json(
        _COMMAND,
        c,
        'summary.json',
        PKDict(
            overlap_rate=r.overlap_rate,
            bound=overlap.overlap_bound(c.alpha, c.alpha),
            true_mean=r.true_mean,
            pairs=len(r.pairs),
        ),
    )
    return f'pairwise overlap rate standard={r.overlap_rate.standard:.6f} bagged={r.overlap_rate.bagged:.6f}'


def _help():
    from bagbayes import runconfig

    default_command.__doc__ += runconfig.help_text(_COMMAND)


_help()
