# -*- coding: utf-8 -*-
u"""Closed-form large-sample overlap probabilities

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from pykern import pkjson
from pykern.pkcollections import PKDict

_COMMAND = 'asymptotic'

_GROWING_DIM = PKDict(standard='standard-exact', bagged='bagged-lower-bound')


def default_command(*overrides, config=None, json=False):
    """Print one overlap probability with 6 decimals, or a JSON record with --json

    Args:
        overrides (str): key=value settings applied over the config file
        config (str): JSON run configuration
        json (bool): machine-readable output

    Keys:
    """
    from bagbayes import runconfig

    c = runconfig.load(_COMMAND, config, overrides)
    res = _compute(c, runconfig.asymptotic_kind(c))
    if json:
        return pkjson.dump_pretty(res)
    return f'{res.probability:.6f}' + (' (upper bound)' if res.upper_bound else '')


def _compute(cfg, kind):
    """Dispatch a validated config to the calculator named by ``kind``

    Singular J, K or V are violated calculator preconditions and surface as
    errors.InvalidArgument.
    """
    from bagbayes import errors

    try:
        return _calculate(cfg, kind)
    except errors.RankDeficiency as e:
        raise errors.InvalidArgument(f'kind={kind}: {e}')


def _calculate(cfg, kind):
    from bagbayes import errors, overlap

    def _need(*keys):
        for k in keys:
            if cfg[k] is None:
                raise errors.InvalidArgument(f'kind={kind} requires key={k}')

    upper_bound = False
    if kind == 'location':
        _need('v', 'sigma_true')
        u = cfg.u if cfg.u is not None else _unit(len(cfg.v))
        p = overlap.asymptotic_overlap_location(cfg.v, cfg.sigma_true, u, cfg.alpha, c=cfg.c, which=cfg.which)
    elif kind == 'growing-dim':
        w = _GROWING_DIM.get(cfg.which, cfg.which)
        if w == _GROWING_DIM.standard:
            _need('quadform')
        else:
            _need('n')
        p = overlap.growing_dim_overlap(cfg.quadform, cfg.alpha, n=cfg.n, m=cfg.m, which=w)
    elif kind == 'regular':
        _need('j', 'k')
        p = overlap.asymptotic_overlap_regular(
            overlap.SandwichInputs(
                j=cfg.j,
                k=cfg.k,
                c=cfg.c,
                u=cfg.u if cfg.u is not None else _unit(len(cfg.j)),
                alpha=cfg.alpha,
            ),
            which=cfg.which,
        )
    else:
        _need('lin_v')
        r = overlap.linreg_overlap(
            cfg.case,
            overlap.LinRegGeometry(
                v=cfg.lin_v,
                v_tilde=cfg.lin_v_tilde,
                sigma=cfg.sigma,
                sigma_tilde=cfg.sigma_tilde,
                sigma_dagger=cfg.sigma_dagger,
                k_matrix=cfg.k_matrix,
                k_quadform=cfg.k_quadform,
                offset=cfg.offset,
            ),
            cfg.alpha,
        )
        p, upper_bound = r.probability, r.upper_bound
    return PKDict(
        kind=kind,
        which=cfg.case if kind == 'linreg' else cfg.which,
        alpha=cfg.alpha,
        probability=float(p),
        upper_bound=upper_bound,
    )


def _unit(d):
    return [1.0] + [0.0] * (d - 1)


def _help():
    from bagbayes import runconfig

    default_command.__doc__ += runconfig.help_text(_COMMAND)


_help()
