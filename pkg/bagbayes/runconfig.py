# -*- coding: utf-8 -*-
u"""Run configuration of the command line: schemas, loading & provenance sidecars

A run is configured by an optional JSON document plus ``key=value``
overrides (values parsed as JSON when possible, else taken as strings).
Every key is checked against the command's schema before anything runs.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from bagbayes import constants, errors, models
from pykern import pkio, pkjson
from pykern.pkcollections import PKDict
from pykern.pkdebug import pkdlog
import bagbayes
import hashlib
import json
import numbers
import numpy as np

_REQUIRED = object()


def _bool(v):
    if isinstance(v, bool):
        return v
    raise ValueError('expected true or false')


def _int(v):
    if isinstance(v, bool) or not isinstance(v, numbers.Integral):
        raise ValueError('expected an integer')
    return int(v)


def _float(v):
    if isinstance(v, bool) or not isinstance(v, numbers.Real):
        raise ValueError('expected a number')
    return float(v)


def _str(v):
    if not isinstance(v, str):
        raise ValueError('expected a string')
    return v


def _vector(v):
    if not isinstance(v, (list, tuple)) or not v:
        raise ValueError('expected a nonempty list of numbers')
    return [_float(x) for x in v]


def _matrix(v):
    """Scalar or list of equal-length rows"""
    if not isinstance(v, (list, tuple)):
        return [[_float(v)]]
    r = [_vector(x) for x in v]
    if len({len(x) for x in r}) != 1:
        raise ValueError('rows have different lengths')
    return r


def _choice(*values):
    def _check(v):
        if v not in values:
            raise ValueError(f'expected one of {values}')
        return v

    _check.__name__ = 'one of ' + ', '.join(str(x) for x in values)
    return _check


def _optional(parser):
    def _check(v):
        return None if v is None else parser(v)

    _check.__name__ = parser.__name__
    return _check


_COMMON = PKDict(
    root_seed=(0, _int, 'root of every random substream (BAGBAYES_SEED overrides)'),
    parallelism=(None, _optional(_int), 'worker count (default BAGBAYES_PARALLELISM)'),
    output_dir=('.', _str, 'directory receiving output files'),
)

_NIG = PKDict(
    a0=(2.0, _float, 'inverse-gamma shape of the NIG prior'),
    b0=(1.0, _float, 'inverse-gamma scale of the NIG prior'),
    lam=(1.0, _float, 'coefficient prior precision multiplier of the NIG prior'),
)

ASYMPTOTIC_KINDS = ('location', 'growing-dim', 'regular', 'linreg')

#: calculator numbers accepted by ``theorem=`` in place of ``kind=``
ASYMPTOTIC_THEOREMS = PKDict({2: 'location', 3: 'growing-dim', 4: 'regular', 5: 'linreg'})

SCHEMAS = PKDict(
    overlap_sim=PKDict(
        n=(50, _int, 'rows per dataset'),
        d=(50, _int, 'regressors'),
        f_kind=('linear', _choice('linear', 'nonlinear'), 'regression function'),
        g_kind=(
            'uncorrelated',
            _choice('uncorrelated', 'correlated', 'fixed-design-heteroskedastic'),
            'regressor distribution',
        ),
        kappa=(1.0, _float, 'correlation bandwidth of the correlated design'),
        h=(constants.DEFAULT_H, _int, 'Student-t degrees of freedom of the correlated design'),
        beta=(None, _optional(_vector), 'true coefficients (default 4/sqrt(j+1))'),
        noise_scale=(1.0, _float, 'noise sd multiplier'),
        model=('nig_regression', _choice('nig_regression', 'flat_linreg'), 'fitted model'),
        m=(None, _optional(_int), 'bootstrap dataset size (default n)'),
        b=(None, _optional(_int), 'bootstrap datasets (default by scale)'),
        r=(None, _optional(_int), 'replicate pairs (default by scale)'),
        full_scale=(False, _bool, 'use published sizes r=100, b=50 instead of r=20, b=20'),
        levels=(list(constants.DEFAULT_LEVELS), _vector, 'credible levels'),
        test_points=(constants.DEFAULT_TEST_POINTS, _int, 'held-out test regressors'),
        bins=(10, _int, 'histogram bins over [0, 1]'),
        **_NIG,
        **_COMMON,
    ),
    fig1=PKDict(
        true_mean=(0.0, _float, 'mean of the data'),
        true_sd=(5.0, _float, 'sd of the data'),
        model_v=(1.0, _float, 'model variance V'),
        prior_precision=(0.0, _float, 'prior precision V0^-1 (0 is flat)'),
        n=(100, _int, 'rows per dataset'),
        num_datasets=(6, _int, 'datasets'),
        alpha=(0.05, _float, '1 - credible level'),
        m=(None, _optional(_int), 'bootstrap dataset size (default n)'),
        b=(constants.DEFAULT_B, _int, 'bootstrap datasets'),
        **_COMMON,
    ),
    asymptotic=PKDict(
        kind=(
            None,
            _optional(_choice(*ASYMPTOTIC_KINDS)),
            'calculator: Gaussian location, growing dimension, regular model or linear regression',
        ),
        theorem=(
            None,
            _optional(_choice(*ASYMPTOTIC_THEOREMS)),
            'calculator by number: 2 location, 3 growing-dim, 4 regular, 5 linreg',
        ),
        which=('standard', _str, 'standard or bagged (growing-dim: standard-exact or bagged-lower-bound)'),
        alpha=(0.05, _float, '1 - credible level'),
        v=(None, _optional(_matrix), 'location: model covariance V'),
        sigma_true=(None, _optional(_matrix), 'location: true covariance'),
        u=(None, _optional(_vector), 'location, regular: direction'),
        c=(1.0, _float, 'location, regular: limiting M/N'),
        quadform=(None, _optional(_float), 'growing-dim: u^T Sigma u'),
        n=(None, _optional(_int), 'growing-dim: N'),
        m=(None, _optional(_int), 'growing-dim: M (default N)'),
        j=(None, _optional(_matrix), 'regular: J'),
        k=(None, _optional(_matrix), 'regular: K'),
        case=('correct', _choice('correct', 'fixed-design', 'random-design-bound'), 'linreg: case'),
        lin_v=(None, _optional(_vector), 'linreg: Z (Z^T Z)^-1 u'),
        lin_v_tilde=(None, _optional(_vector), 'linreg: same for the replicate design'),
        sigma=(1.0, _float, 'linreg: model sd'),
        sigma_tilde=(1.0, _float, 'linreg: replicate model sd'),
        sigma_dagger=(None, _optional(_float), 'linreg: true outcome sd'),
        k_matrix=(None, _optional(_matrix), 'linreg: true outcome covariance K(Z)'),
        k_quadform=(None, _optional(_float), 'linreg: v^T K(Z) v'),
        offset=(0.0, _float, 'linreg: v^T m(Z) - v_tilde^T m(Z_tilde)'),
    ),
    bag_fit=PKDict(
        data=(_REQUIRED, _str, 'dataset CSV (x_0.. or z_0..z_{D-1}, y)'),
        model=(
            'gaussian_location',
            _choice('gaussian_location', 'nig_regression', 'flat_linreg'),
            'fitted model',
        ),
        v=(1.0, _matrix, 'gaussian_location: model covariance (scalar means V = v I)'),
        v0_inv=(None, _optional(_matrix), 'gaussian_location: prior precision (default flat)'),
        sigma2=(None, _optional(_float), 'flat_linreg: variance (default residual variance)'),
        m=(None, _optional(_int), 'bootstrap dataset size (default N)'),
        b=(constants.DEFAULT_B, _int, 'bootstrap datasets'),
        exact=(False, _bool, 'enumerate all N^M bootstrap datasets'),
        u=(None, _optional(_vector), 'direction of the choose-B diagnostic (default e_0)'),
        closed_form=(False, _bool, 'gaussian_location: also write the closed-form moments'),
        **_NIG,
        **_COMMON,
    ),
    sample=PKDict(
        data=(_REQUIRED, _str, 'dataset CSV'),
        model=(
            'gaussian_location',
            _choice('gaussian_location', 'nig_regression', 'flat_linreg'),
            'fitted model',
        ),
        mcmc=('rwm', _choice('rwm', 'conjugate'), 'random-walk Metropolis or exact conjugate draws'),
        v=(1.0, _matrix, 'gaussian_location: model covariance'),
        v0_inv=(None, _optional(_matrix), 'gaussian_location: prior precision'),
        sigma2=(None, _optional(_float), 'flat_linreg: variance (default residual variance)'),
        t=(1000, _int, 'long run length'),
        t_flat=(100, _int, 'short run length'),
        m=(None, _optional(_int), 'bootstrap dataset size (default N)'),
        b=(10, _int, 'short runs'),
        proposal_sd=(1.0, _float, 'initial random-walk proposal sd'),
        theta_init=(None, _optional(_vector), 'long run start'),
        discard_fraction=(0.0, _float, 'fraction of each short run discarded'),
        **_NIG,
        **_COMMON,
    ),
)


def help_text(command):
    """Accepted keys of a command, for its --help"""
    return '\n'.join(
        f'  {k}: {v[1].__name__.lstrip("_")}'
        + ('' if v[0] is _REQUIRED else f' (default {pkjson.dump_str(v[0])})')
        + f' {v[2]}'
        for k, v in SCHEMAS[command].items()
    )


def _read(path):
    p = pkio.py_path(path)
    try:
        return pkjson.load_any(pkio.read_text(p))
    except json.JSONDecodeError as e:
        raise errors.ConfigError(f'{p}: line {e.lineno} column {e.colno}: {e.msg}')
    except OSError as e:
        raise errors.ConfigError(f'{p}: {e}')


def _override(text):
    k, s, v = text.partition('=')
    if not s or not k:
        raise errors.ConfigError(f'override={text!r} is not key=value')
    try:
        return k, pkjson.load_any(v)
    except json.JSONDecodeError:
        return k, v


def load(command, config=None, overrides=()):
    """Validated run configuration

    Args:
      * command: key of SCHEMAS
      * config: JSON file path or None
      * overrides: ``key=value`` strings applied after the file

    Returns:
      * PKDict with every schema key
    """
    schema = SCHEMAS[command]
    doc = _read(config) if config else {}
    if not isinstance(doc, dict):
        raise errors.ConfigError(f'{config}: top level must be a JSON object')
    doc = dict(doc)
    doc.update(_override(o) for o in overrides)
    res = PKDict()
    for k in doc:
        if k not in schema:
            raise errors.ConfigError(f'unknown key={k} for {command}')
    for k, (default, parser, _) in schema.items():
        if k not in doc:
            if default is _REQUIRED:
                raise errors.ConfigError(f'missing required key={k} for {command}')
            res[k] = default
            continue
        try:
            res[k] = parser(doc[k])
        except ValueError as e:
            raise errors.ConfigError(f'key={k} value={doc[k]!r}: {e}')
    if 'root_seed' in res and bagbayes.cfg.seed is not None:
        pkdlog('BAGBAYES_SEED={} overrides root_seed={}', bagbayes.cfg.seed, res.root_seed)
        res.root_seed = bagbayes.cfg.seed
    return res


def asymptotic_kind(cfg):
    """Calculator named by ``kind`` or ``theorem``, which must agree when both are set"""
    t = None if cfg.theorem is None else ASYMPTOTIC_THEOREMS[cfg.theorem]
    if cfg.kind is None and t is None:
        raise errors.ConfigError('missing required key=kind (or theorem) for asymptotic')
    if cfg.kind is not None and t is not None and cfg.kind != t:
        raise errors.ConfigError(f'kind={cfg.kind} conflicts with theorem={cfg.theorem}')
    return cfg.kind or t


def config_hash(cfg):
    return hashlib.sha256(pkjson.dump_pretty(cfg).encode()).hexdigest()


def metadata(command, cfg):
    return PKDict(
        command=command,
        config=cfg,
        config_sha256=config_hash(cfg),
        root_seed=cfg.get('root_seed'),
        version=bagbayes.__version__,
    )


def output_path(cfg, name):
    d = pkio.py_path(cfg.output_dir)
    pkio.mkdir_parent(d)
    return d.join(name)


def write_json(command, cfg, name, value):
    """JSON output with the run metadata under ``metadata``"""
    p = output_path(cfg, name)
    pkjson.dump_pretty(PKDict(metadata=metadata(command, cfg), **value), filename=p)
    pkdlog('wrote {}', p)
    return p


def write_sidecar(command, cfg, path, **extra):
    """``<path>.meta.json`` next to a CSV output"""
    p = pkio.py_path(str(path) + '.meta.json')
    pkjson.dump_pretty(PKDict(metadata(command, cfg), **extra), filename=p)
    return p


def _square(value, d, what):
    a = np.atleast_2d(np.asarray(value, dtype=float))
    if a.shape == (1, 1):
        return a[0, 0] * np.eye(d)
    if a.shape != (d, d):
        raise errors.InvalidArgument(f'{what} has shape={a.shape}, expected ({d}, {d})')
    return a


def build_model(cfg, data):
    """Model named by ``cfg.model`` sized to the dataset"""
    k = 'location' if cfg.model == 'gaussian_location' else 'regression'
    if data.kind != k:
        raise errors.InvalidArgument(f'model={cfg.model} needs {k} data, got {data.kind}')
    if cfg.model == 'gaussian_location':
        return models.GaussianLocationModel(
            _square(cfg.v, data.d, 'v'),
            None if cfg.v0_inv is None else _square(cfg.v0_inv, data.d, 'v0_inv'),
        )
    if cfg.model == 'nig_regression':
        return models.NIGRegressionModel(cfg.a0, cfg.b0, cfg.lam)
    return models.FlatLinRegModel(
        models.residual_variance(data) if cfg.sigma2 is None else cfg.sigma2,
    )
