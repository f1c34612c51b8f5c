# -*- coding: utf-8 -*-
u"""Synthetic data-generating processes for the overlap experiments

Regression designs draw rows Z_n ~ G and outcomes Y_n = f(Z_n)^T beta + eps_n
with f linear or elementwise cubic. G is either i.i.d. standard normal,
the correlated-kappa design (squared-exponential correlation, odd 1-indexed
coordinates rescaled to unit-variance Student-t tails), or a fixed design
with an intercept, a [-2, 2]^2 grid & heteroskedastic noise.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from bagbayes import constants, errors, models, overlap, randstream
from pykern import pkio
from pykern.pkdebug import pkdlog
import dataclasses
import functools
import math
import numpy as np
import pandas

LINEAR = 'linear'
NONLINEAR = 'nonlinear'
F_KINDS = (LINEAR, NONLINEAR)

UNCORRELATED = 'uncorrelated'
CORRELATED = 'correlated'
FIXED_DESIGN = 'fixed-design-heteroskedastic'
G_KINDS = (UNCORRELATED, CORRELATED, FIXED_DESIGN)

FOUR_OVER_SQRT_D = 'four-over-sqrt-d'


def beta_dagger(d, rule=FOUR_OVER_SQRT_D):
    """True coefficients: beta[j] = 4/sqrt(j+1), or an explicit length-d vector"""
    if isinstance(rule, str):
        if rule != FOUR_OVER_SQRT_D:
            raise errors.InvalidArgument(f'beta_rule={rule} unknown')
        return 4 / np.sqrt(np.arange(1, d + 1))
    b = np.asarray(rule, dtype=float)
    if b.shape != (d,):
        raise errors.InvalidArgument(f'explicit beta has shape={b.shape}, expected ({d},)')
    return b


@dataclasses.dataclass(frozen=True)
class DGPConfig:
    """Regression data-generating process

    Args:
      * n, d: rows & regressors
      * f_kind: ``linear`` or ``nonlinear``
      * g_kind: ``uncorrelated``, ``correlated`` or ``fixed-design-heteroskedastic``
      * kappa: correlation bandwidth (correlated)
      * h: Student-t degrees of freedom of the odd coordinates (correlated)
      * beta_rule: ``four-over-sqrt-d`` or an explicit vector
      * noise_scale: multiplies the noise standard deviation (0 is noiseless)
    """

    n: int
    d: int
    f_kind: str = LINEAR
    g_kind: str = UNCORRELATED
    kappa: float = 1.0
    h: int = constants.DEFAULT_H
    beta_rule: object = FOUR_OVER_SQRT_D
    noise_scale: float = 1.0

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise errors.InvalidArgument(f'n={self.n} & d={self.d} must be positive')
        if self.f_kind not in F_KINDS:
            raise errors.InvalidArgument(f'f_kind={self.f_kind} not one of {F_KINDS}')
        if self.g_kind not in G_KINDS:
            raise errors.InvalidArgument(f'g_kind={self.g_kind} not one of {G_KINDS}')
        if not self.kappa > 0:
            raise errors.InvalidArgument(f'kappa={self.kappa} must be positive')
        if not self.h > 2:
            raise errors.InvalidArgument(f'h={self.h} must exceed 2')
        if self.noise_scale < 0:
            raise errors.InvalidArgument(f'noise_scale={self.noise_scale} must be nonnegative')
        if self.g_kind == FIXED_DESIGN:
            if self.d < 3:
                raise errors.InvalidArgument(f'fixed design needs d >= 3, got d={self.d}')
            if math.isqrt(self.n) ** 2 != self.n:
                raise errors.InvalidArgument(f'fixed design needs n a perfect square, got n={self.n}')
        if not isinstance(self.beta_rule, str):
            object.__setattr__(self, 'beta_rule', tuple(float(x) for x in self.beta_rule))

    @property
    def beta(self):
        return beta_dagger(self.d, self.beta_rule)


@dataclasses.dataclass(frozen=True)
class LocationScenario:
    """Gaussian location data x_n ~ N(true_mean, true_cov) fit with model covariance model_v

    Args:
      * true_mean: scalar or length-D vector
      * true_sd: marginal sd when true_cov is omitted
      * model_v: scalar or (D, D) model covariance V
      * true_cov: optional (D, D) true covariance
    """

    true_mean: object = 0.0
    true_sd: float = 5.0
    model_v: object = 1.0
    true_cov: object = None

    def __post_init__(self):
        if self.true_cov is None and not self.true_sd > 0:
            raise errors.InvalidArgument(f'true_sd={self.true_sd} must be positive')

    @property
    def d(self):
        return self.mean.shape[0]

    @property
    def mean(self):
        m = np.atleast_1d(np.asarray(self.true_mean, dtype=float))
        if m.shape[0] == 1 and self.true_cov is not None:
            return np.full(np.atleast_2d(self.true_cov).shape[0], m[0])
        return m

    @property
    def cov(self):
        if self.true_cov is not None:
            return np.atleast_2d(np.asarray(self.true_cov, dtype=float))
        return self.true_sd**2 * np.eye(self.d)

    @property
    def v(self):
        v = np.atleast_2d(np.asarray(self.model_v, dtype=float))
        return v[0, 0] * np.eye(self.d) if v.shape == (1, 1) else v

    def model(self, v0_inv=None):
        return models.GaussianLocationModel(self.v, v0_inv)


def _correlation(d, kappa):
    i = np.arange(d)
    return np.exp(-((i[:, None] - i[None, :]) ** 2) / kappa**2)


@functools.lru_cache(maxsize=32)
def _fixed_design(root_seed, n, d):
    q = math.isqrt(n)
    g = np.linspace(*constants.FIXED_DESIGN_GRID, q)
    z = np.empty((n, d))
    z[:, 0] = 1.0
    z[:, 1] = np.repeat(g, q)
    z[:, 2] = np.tile(g, q)
    z[:, 3:] = randstream.SeedPath(
        root_seed, (constants.STREAM_FIXED_DESIGN, n, d),
    ).generator().standard_normal((n, d - 3))
    z.setflags(write=False)
    return z


def gen_regressors(cfg, stream):
    """N x D regressor matrix drawn from G

    The fixed design depends only on (stream.root_seed, N, D) and is the same
    read-only array for every replicate.
    """
    if cfg.g_kind == FIXED_DESIGN:
        return _fixed_design(stream.root_seed, cfg.n, cfg.d)
    return _draw_g(cfg, cfg.n, stream.generator())


def _draw_g(cfg, count, rng):
    if cfg.g_kind == UNCORRELATED:
        return rng.standard_normal((count, cfg.d))
    z = rng.multivariate_normal(
        np.zeros(cfg.d), _correlation(cfg.d, cfg.kappa), size=count, method='eigh',
    )
    # coordinates 1, 3, 5, ... (1-indexed) share one chi-square draw per row
    xi = rng.chisquare(cfg.h, size=count)
    z[:, 0::2] /= np.sqrt(xi / (cfg.h - 2))[:, None]
    return z


def apply_f(f_kind, z):
    if f_kind == LINEAR:
        return np.asarray(z, dtype=float)
    if f_kind == NONLINEAR:
        return np.asarray(z, dtype=float) ** 3
    raise errors.InvalidArgument(f'f_kind={f_kind} not one of {F_KINDS}')


def noise_sd(cfg, z):
    """Per-row noise standard deviation"""
    s = np.full(z.shape[0], cfg.noise_scale)
    if cfg.g_kind == FIXED_DESIGN:
        s = s * np.sqrt(1 + z[:, 1] ** 2 + z[:, 2] ** 2)
    return s


def regression_mean(cfg, z):
    return apply_f(cfg.f_kind, z) @ cfg.beta


def gen_outcomes(cfg, z, stream, noise_scale=None):
    """y = f(Z)^T beta + eps

    Args:
      * noise_scale: overrides cfg.noise_scale (0 gives y = f(Z)^T beta exactly)
    """
    z = np.atleast_2d(z)
    if z.shape[1] != cfg.d:
        raise errors.InvalidArgument(f'Z has {z.shape[1]} columns, expected d={cfg.d}')
    if noise_scale is not None:
        cfg = dataclasses.replace(cfg, noise_scale=noise_scale)
    return regression_mean(cfg, z) + noise_sd(cfg, z) * stream.generator().standard_normal(z.shape[0])


def gen_dataset(cfg, stream):
    """Regression dataset with regressors from stream.child(0) & outcomes from stream.child(1)"""
    z = gen_regressors(cfg, stream.child(0))
    return models.RegressionData(z, gen_outcomes(cfg, z, stream.child(1)))


def gen_location_data(scenario, n, stream):
    """n i.i.d. draws from N(true_mean, true_cov)"""
    if n < 1:
        raise errors.InvalidArgument(f'n={n} must be >= 1')
    rng = stream.generator()
    if scenario.true_cov is None:
        x = scenario.mean + scenario.true_sd * rng.standard_normal((n, scenario.d))
    else:
        x = rng.multivariate_normal(scenario.mean, scenario.cov, size=n, method='eigh')
    return models.LocationData(x)


def gen_test_points(cfg, count, stream):
    """count x D test regressors from G; fixed design resamples training rows uniformly"""
    if count < 1:
        raise errors.InvalidArgument(f'count={count} must be >= 1')
    rng = stream.generator()
    if cfg.g_kind == FIXED_DESIGN:
        return _fixed_design(stream.root_seed, cfg.n, cfg.d)[rng.integers(0, cfg.n, size=count)]
    return _draw_g(cfg, count, rng)


def sandwich_location_inputs(model_v, sigma_true, u, alpha, c=1.0):
    """Regular-model inputs of the Gaussian location model: J = V^-1, K = V^-1 Sigma V^-1"""
    v = np.atleast_2d(np.asarray(model_v, dtype=float))
    j = models._inverse(models.cholesky(v, 'V'))
    k = j @ np.atleast_2d(np.asarray(sigma_true, dtype=float)) @ j
    return overlap.SandwichInputs(j=j, k=(k + k.T) / 2, c=c, u=u, alpha=alpha)


def write_dataset_csv(data, path):
    """CSV with header x_0.. (location) or z_0..z_{D-1}, y (regression)"""
    if data.kind == 'location':
        f = pandas.DataFrame(data.x, columns=[f'x_{i}' for i in range(data.d)])
    else:
        f = pandas.DataFrame(data.z, columns=[f'z_{i}' for i in range(data.d)])
        f['y'] = data.y
    p = pkio.py_path(path)
    pkio.mkdir_parent(p.dirpath())
    f.to_csv(str(p), index=False)
    pkdlog('wrote {}', p)
    return p


def read_dataset_csv(path):
    """Inverse of :func:`write_dataset_csv`

    Raises:
      * errors.DatasetFormatError naming the offending row and column
    """
    p = str(pkio.py_path(path))
    try:
        f = pandas.read_csv(p, dtype=str, keep_default_na=False)
    except FileNotFoundError:
        raise errors.DatasetFormatError(p, 'file not found')
    except (pandas.errors.ParserError, pandas.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise errors.DatasetFormatError(p, f'unparseable CSV: {e}')
    cols = list(f.columns)
    if cols and cols[0].startswith('x_'):
        expect = [f'x_{i}' for i in range(len(cols))]
    else:
        expect = [f'z_{i}' for i in range(len(cols) - 1)] + ['y']
    for e, c in zip(expect, cols):
        if e != c:
            raise errors.DatasetFormatError(p, f'expected header {e}', row=0, column=c)
    if len(cols) < (1 if expect[0].startswith('x_') else 2):
        raise errors.DatasetFormatError(p, 'too few columns', row=0)
    if not len(f):
        raise errors.DatasetFormatError(p, 'no data rows')
    v = np.empty(f.shape)
    for j, c in enumerate(cols):
        x = pandas.to_numeric(f[c], errors='coerce').to_numpy(dtype=float)
        bad = np.flatnonzero(~np.isfinite(x))
        if len(bad):
            raise errors.DatasetFormatError(
                p, f'not a finite number: {f[c].iloc[bad[0]]!r}', row=int(bad[0]) + 1, column=c,
            )
        v[:, j] = x
    if expect[0].startswith('x_'):
        return models.LocationData(v)
    return models.RegressionData(v[:, :-1], v[:, -1])
