# -*- coding: utf-8 -*-
u"""Bagged posterior sampling of a dataset CSV with an MCMC procedure

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function

_COMMAND = 'sample'


def default_command(*overrides, config=None):
    """Write samples.csv (run_id -1 is the long run) & its metadata sidecar

    Args:
        overrides (str): key=value settings applied over the config file
        config (str): JSON run configuration

    Keys:
    """
    from bagbayes import randstream, runconfig, sampler, simgen

    c = runconfig.load(_COMMAND, config, overrides)
    d = simgen.read_dataset_csv(c.data)
    model = runconfig.build_model(c, d)
    theta = c.theta_init
    if theta is None and c.model == 'nig_regression' and c.mcmc == 'rwm':
        # (beta, sigma^2) needs a positive variance
        theta = [0.0] * d.d + [1.0]
    if c.mcmc == 'conjugate':
        mcmc = sampler.ConjugateSampler(model)
    else:
        mcmc = sampler.RandomWalkMetropolis(model, theta)
    out = sampler.bayesbag_sample(
        mcmc,
        d,
        c.t,
        c.t_flat,
        c.m,
        c.b,
        c.proposal_sd,
        randstream.SeedPath(c.root_seed),
        theta_init=theta,
        discard_fraction=c.discard_fraction,
        parallelism=c.parallelism,
    )
    p = sampler.write_samples_csv(out, runconfig.output_path(c, 'samples.csv'))
    runconfig.write_sidecar(_COMMAND, c, p, **out.metadata())
    return f'standard={len(out.standard_samples)} bagged={len(out.bagged_samples)} draws'


def _help():
    from bagbayes import runconfig

    default_command.__doc__ += runconfig.help_text(_COMMAND)


_help()
