# -*- coding: utf-8 -*-
u"""Replicate-pair overlap simulation of standard vs bagged regression posteriors

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from pykern.pkcollections import PKDict
import pandas

_COMMAND = 'overlap_sim'


def default_command(*overrides, config=None):
    """Run an overlap experiment and write overlap.csv, histogram.csv & summary.json

    Args:
        overrides (str): key=value settings applied over the config file
        config (str): JSON run configuration

    Keys:
    """
    from bagbayes import constants, experiments, runconfig, simgen

    c = runconfig.load(_COMMAND, config, overrides)
    s = constants.FULL_SCALE if c.full_scale else constants.DESK_SCALE
    res = experiments.run_overlap_experiment(
        experiments.ExperimentSpec(
            dgp=simgen.DGPConfig(
                n=c.n,
                d=c.d,
                f_kind=c.f_kind,
                g_kind=c.g_kind,
                kappa=c.kappa,
                h=c.h,
                beta_rule=c.beta or simgen.FOUR_OVER_SQRT_D,
                noise_scale=c.noise_scale,
            ),
            model=c.model,
            model_params=PKDict(a0=c.a0, b0=c.b0, lam=c.lam) if c.model == experiments.NIG_REGRESSION else (),
            m=c.m,
            b=c.b or s['b'],
            r=c.r or s['r'],
            levels=c.levels,
            test_point_count=c.test_points,
            root_seed=c.root_seed,
            parallelism=c.parallelism,
        ),
    )
    p = runconfig.output_path(c, 'overlap.csv')
    res.to_frame().to_csv(str(p), index=False)
    runconfig.write_sidecar(_COMMAND, c, p)
    h = []
    for m in experiments.METHODS:
        x = experiments.histogram_counts(res.overlap_reports[m], c.bins)
        x.insert(0, 'method', m)
        h.append(x)
    p = runconfig.output_path(c, 'histogram.csv')
    pandas.concat(h, ignore_index=True).to_csv(str(p), index=False)
    runconfig.write_sidecar(_COMMAND, c, p)
    s = res.summary()
    runconfig.write_json(_COMMAND, c, 'summary.json', s)
    return '\n'.join(
        f'{m}: violation_fractions={dict(s.violation_fractions[m])} mlpd={s.mlpd[m]:.6f}'
        for m in experiments.METHODS
    ) + f'\nmlpd_diff_ci={s.mlpd_diff_ci}'


def _help():
    from bagbayes import runconfig

    default_command.__doc__ += runconfig.help_text(_COMMAND)


_help()
