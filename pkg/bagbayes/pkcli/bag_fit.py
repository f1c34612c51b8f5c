# -*- coding: utf-8 -*-
u"""Fit a bagged posterior to a dataset CSV

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from pykern.pkcollections import PKDict
from pykern.pkdebug import pkdlog

_COMMAND = 'bag_fit'


def default_command(*overrides, config=None):
    """Write bagged_posterior.json, moments.json & choose_b.json

    Args:
        overrides (str): key=value settings applied over the config file
        config (str): JSON run configuration

    Keys:
    """
    from bagbayes import bagging, constants, errors, randstream, runconfig, simgen

    c = runconfig.load(_COMMAND, config, overrides)
    d = simgen.read_dataset_csv(c.data)
    model = runconfig.build_model(c, d)
    if c.exact:
        bp = bagging.bag_exact(model, d, c.m, parallelism=c.parallelism)
    else:
        bp = bagging.bag_monte_carlo(
            model, d, c.m, c.b, randstream.SeedPath(c.root_seed, (constants.STREAM_BOOTSTRAP,)),
            parallelism=c.parallelism,
        )
    runconfig.write_json(_COMMAND, c, 'bagged_posterior.json', bp.to_json())
    m = PKDict(bagged=bagging.bagged_moments(bp).to_json())
    if c.closed_form:
        if c.model != 'gaussian_location':
            raise errors.InvalidArgument('closed_form moments require model=gaussian_location')
        m.closed_form = bagging.gaussian_location_bagged_moments_closed_form(model, d, c.m).to_json()
    runconfig.write_json(_COMMAND, c, 'moments.json', m)
    u = c.u if c.u is not None else [1.0] + [0.0] * (bp.d - 1)
    try:
        b = bagging.choose_b_diagnostic(bp, u).to_json()
    except errors.InsufficientComponents as e:
        pkdlog('choose-B diagnostic: {}', e)
        b = PKDict(error='insufficient-components', message=str(e), b=bp.b)
    except errors.InvalidArgument as e:
        pkdlog('choose-B diagnostic: {}', e)
        b = PKDict(error='invalid-argument', message=str(e), b=bp.b)
    runconfig.write_json(_COMMAND, c, 'choose_b.json', b)
    return f'B={bp.b} skipped={bp.skipped} mean={m.bagged["mean"]}'


def _help():
    from bagbayes import runconfig

    default_command.__doc__ += runconfig.help_text(_COMMAND)


_help()
