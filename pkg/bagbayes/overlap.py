# -*- coding: utf-8 -*-
u"""Credible intervals, the overlap criterion & closed-form overlap probabilities

Two valid 1-alpha and 1-alpha' confidence sets built from independent
replicate datasets intersect with probability at least (1-alpha)(1-alpha').
The calculators below evaluate the large-sample overlap probabilities of
standard & bagged posterior credible intervals exactly as the formulas are
stated; they never estimate J, K or the true covariance themselves.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from bagbayes import bagging, distributions, errors, models, parallel
from pykern.pkcollections import PKDict
from pykern.pkdebug import pkdlog
import dataclasses
import numpy as np
import pandas
import scipy.linalg
from scipy import special

MOMENT_MATCHED = 'moment-matched-normal'
MIXTURE_QUANTILE = 'mixture-quantile'
INTERVAL_MODES = (MOMENT_MATCHED, MIXTURE_QUANTILE)

STANDARD = 'standard'
BAGGED = 'bagged'

LINREG_CORRECT = 'correct'
LINREG_FIXED_DESIGN = 'fixed-design'
LINREG_RANDOM_DESIGN_BOUND = 'random-design-bound'

REPORT_COLUMNS = ('direction_id', 'level', 'overlap_prob', 'bound', 'replicates', 'violated')


@dataclasses.dataclass(frozen=True)
class CredibleInterval:
    lower: float
    upper: float
    level: float

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise errors.InvalidArgument(f'lower={self.lower} > upper={self.upper}')
        if not 0 < self.level < 1:
            raise errors.InvalidArgument(f'level={self.level} not in (0, 1)')


@dataclasses.dataclass(frozen=True)
class SandwichInputs:
    """Inputs of the regular-model calculator

    Args:
      * j: (D, D) expected Hessian of the negative log likelihood at the pseudo-true parameter
      * k: (D, D) covariance of the score at the pseudo-true parameter
      * c: limiting ratio M/N
      * u: direction of the functional
      * alpha: 1 - credible level
    """

    j: np.ndarray
    k: np.ndarray
    c: float
    u: np.ndarray
    alpha: float

    def __post_init__(self):
        for n in ('j', 'k'):
            a = np.atleast_2d(np.asarray(getattr(self, n), dtype=float))
            if a.shape[0] != a.shape[1] or not np.allclose(a, a.T, rtol=1e-10, atol=0):
                raise errors.InvalidArgument(f'{n.upper()} must be a symmetric square matrix')
            object.__setattr__(self, n, a)
        object.__setattr__(self, 'u', models._direction(self.u, self.j.shape[0]))
        if self.k.shape != self.j.shape:
            raise errors.InvalidArgument('J and K must have the same shape')
        if not self.c > 0:
            raise errors.InvalidArgument(f'c={self.c} must be positive')
        _check_alpha(self.alpha)


@dataclasses.dataclass(frozen=True)
class LinRegGeometry:
    """Replicate-pair geometry for the flat-prior linear regression calculator

    Args:
      * v, v_tilde: Z (Z^T Z)^-1 u for the two designs
      * sigma, sigma_tilde: model standard deviations of the two fits
      * sigma_dagger: true outcome standard deviation (correct & random-design cases)
      * k_matrix: true outcome covariance K(Z) (fixed-design case), or
      * k_quadform: v^T K(Z) v given directly
      * offset: v^T m(Z) - v_tilde^T m(Z_tilde) (random-design case)
    """

    v: np.ndarray
    v_tilde: np.ndarray = None
    sigma: float = 1.0
    sigma_tilde: float = 1.0
    sigma_dagger: float = None
    k_matrix: np.ndarray = None
    k_quadform: float = None
    offset: float = 0.0


@dataclasses.dataclass(frozen=True)
class LinRegOverlap:
    """Overlap probability, or an upper bound on it when ``upper_bound``"""

    probability: float
    upper_bound: bool


class OverlapReport:
    """Estimated overlap probabilities per direction & level

    Args:
      * rows: list of PKDict(direction_id, level, overlap_prob, replicates)
    """

    def __init__(self, rows):
        for r in rows:
            if not 0 <= r.overlap_prob <= 1:
                raise errors.InvalidArgument(f'overlap_prob={r.overlap_prob} not in [0, 1]')
        self.rows = rows

    @staticmethod
    def bound(level):
        return overlap_bound(1 - level, 1 - level)

    def probabilities(self, level):
        """Overlap probabilities at one level ordered by direction"""
        return np.array([r.overlap_prob for r in self.rows if r.level == level])

    def violation_fraction(self, level):
        p = self.probabilities(level)
        return float(np.mean(p < self.bound(level))) if len(p) else 0.0

    def to_frame(self):
        return pandas.DataFrame(
            [
                [r.direction_id, r.level, r.overlap_prob, self.bound(r.level), r.replicates,
                 r.overlap_prob < self.bound(r.level)]
                for r in self.rows
            ],
            columns=REPORT_COLUMNS,
        )

    def to_csv(self, path):
        self.to_frame().to_csv(str(path), index=False)


def _check_alpha(alpha):
    if not 0 < alpha < 1:
        raise errors.InvalidArgument(f'alpha={alpha} not in (0, 1)')


def _prob_abs_normal_le(x):
    """Pr(|W| <= x) for W ~ N(0, 1)"""
    return float(2 * special.ndtr(x) - 1)


def _z(alpha):
    return float(special.ndtri(1 - alpha / 2))


def central_interval(posterior, alpha):
    """Equal-tail interval center +/- quantile(1 - alpha/2) scale

    Args:
      * posterior: scalar Gaussian or Student-t posterior
      * alpha: 1 - level
    """
    _check_alpha(alpha)
    h = float(distributions.std_ppf(1 - alpha / 2, posterior.dof)) * posterior.scale
    return CredibleInterval(posterior.center - h, posterior.center + h, 1 - alpha)


def interval_arrays(posterior, U, alpha, mode=MOMENT_MATCHED):
    """Lower & upper endpoints of 1-alpha intervals for u^T theta, each row u of U

    Args:
      * posterior: a vector posterior or a :class:`bagging.BaggedPosterior`
      * U: (k, D) directions
      * alpha: 1 - level
      * mode: bagged interval mode

    Returns:
      * lower, upper: length-k arrays
    """
    _check_alpha(alpha)
    if not isinstance(posterior, bagging.BaggedPosterior):
        c, s, dof = posterior.functional_arrays(U)
        h = distributions.std_ppf(1 - alpha / 2, dof) * s
        return c - h, c + h
    c, s, dofs = posterior.functional_arrays(U)
    if mode == MOMENT_MATCHED:
        mean, var = distributions.mixture_moments(c, s, posterior.weights, dofs)
        h = _z(alpha) * np.sqrt(np.maximum(var, 0))
        return mean - h, mean + h
    if mode == MIXTURE_QUANTILE:
        return (
            distributions.mixture_ppf(alpha / 2, c, s, posterior.weights, dofs),
            distributions.mixture_ppf(1 - alpha / 2, c, s, posterior.weights, dofs),
        )
    raise errors.InvalidArgument(f'mode={mode} not one of {INTERVAL_MODES}')


def bagged_interval(bp, u, alpha, mode=MOMENT_MATCHED):
    """Credible interval for u^T theta under a bagged posterior

    ``moment-matched-normal`` is the central interval of the normal with the
    bagged mean & variance; ``mixture-quantile`` inverts the mixture CDF at
    alpha/2 & 1-alpha/2 by bisection.
    """
    lo, hi = interval_arrays(bp, np.atleast_2d(u), alpha, mode)
    return CredibleInterval(float(lo[0]), float(hi[0]), 1 - alpha)


def intervals_overlap(a, b):
    """Closed intervals intersect (touching endpoints count)"""
    return max(a.lower, b.lower) <= min(a.upper, b.upper)


def overlap_bound(alpha, alpha_prime):
    """Lower bound (1-alpha)(1-alpha') on the overlap of two valid sets"""
    return (1 - alpha) * (1 - alpha_prime)


def _quadform(a, u):
    return float(u @ a @ u)


def asymptotic_overlap_location(v, sigma_true, u, alpha, c=1.0, which=STANDARD):
    """Limiting overlap probability for the Gaussian location model

    standard: Pr(|W| <= z sqrt(2) (u^T V u / u^T Sigma u)^1/2)
    bagged:   Pr(|W| <= z sqrt(2) (u^T ((V + Sigma)/c) u / u^T Sigma u)^1/2)
    """
    _check_alpha(alpha)
    v = np.atleast_2d(np.asarray(v, dtype=float))
    s = np.atleast_2d(np.asarray(sigma_true, dtype=float))
    u = models._direction(u, v.shape[0])
    den = _quadform(s, u)
    if not den > 0:
        raise errors.InvalidArgument(f'u^T Sigma u={den} must be positive')
    if which == STANDARD:
        num = _quadform(v, u)
    elif which == BAGGED:
        if not c > 0:
            raise errors.InvalidArgument(f'c={c} must be positive')
        num = _quadform((v + s) / c, u)
    else:
        raise errors.InvalidArgument(f'which={which} not one of {STANDARD}, {BAGGED}')
    return _prob_abs_normal_le(_z(alpha) * np.sqrt(2 * num / den))


def growing_dim_overlap(quadform, alpha, n=None, m=None, which='standard-exact'):
    """Finite-sample overlap for V = I, flat prior & Gaussian data

    standard-exact: Pr(|W| <= z sqrt(2) / (u^T Sigma u)^1/2), |u| = 1
    bagged-lower-bound: Pr(|T_{2N-2}| <= z sqrt((N-1)/M))
    """
    _check_alpha(alpha)
    if which == 'standard-exact':
        if not quadform > 0:
            raise errors.InvalidArgument(f'u^T Sigma u={quadform} must be positive')
        return _prob_abs_normal_le(_z(alpha) * np.sqrt(2 / quadform))
    if which == 'bagged-lower-bound':
        if n is None or n < 2:
            raise errors.InvalidArgument(f'n={n} must be >= 2')
        m = n if m is None else m
        if not m > 0:
            raise errors.InvalidArgument(f'm={m} must be positive')
        return float(2 * special.stdtr(2 * n - 2, _z(alpha) * np.sqrt((n - 1) / m)) - 1)
    raise errors.InvalidArgument(f'which={which} not one of standard-exact, bagged-lower-bound')


def asymptotic_overlap_regular(inputs, which=STANDARD):
    """Limiting overlap for regular models with sandwich covariance J^-1 K J^-1

    standard: ratio u^T J^-1 u / u^T J^-1 K J^-1 u
    bagged:   ratio u^T (J^-1/c + J^-1 K J^-1/c) u / u^T J^-1 K J^-1 u
    """
    ji = models._inverse(models.cholesky(inputs.j, 'J'))
    models.cholesky(inputs.k, 'K')
    sandwich = ji @ inputs.k @ ji
    den = _quadform(sandwich, inputs.u)
    if which == STANDARD:
        num = _quadform(ji, inputs.u)
    elif which == BAGGED:
        num = _quadform((ji + sandwich) / inputs.c, inputs.u)
    else:
        raise errors.InvalidArgument(f'which={which} not one of {STANDARD}, {BAGGED}')
    return _prob_abs_normal_le(_z(inputs.alpha) * np.sqrt(2 * num / den))


def _positive(name, value):
    if value is None or not value > 0:
        raise errors.InvalidArgument(f'{name}={value} must be positive')
    return float(value)


def linreg_overlap(case, geometry, alpha):
    """Overlap of flat-prior linear regression credible intervals for u^T beta

    correct: m(Z) = Z beta, K(Z) = sigma_dagger^2 I (exact)
    fixed-design: Z = Z_tilde, arbitrary m & K (exact)
    random-design-bound: K(Z) = sigma_dagger^2 I, arbitrary m (upper bound)

    Returns:
      * :class:`LinRegOverlap`
    """
    _check_alpha(alpha)
    z = _z(alpha)
    g = geometry
    v = np.asarray(g.v, dtype=float)
    nv = float(np.linalg.norm(v))
    s = _positive('sigma', g.sigma)
    st = _positive('sigma_tilde', g.sigma_tilde)
    if case == LINREG_FIXED_DESIGN:
        q = g.k_quadform
        if q is None and g.k_matrix is not None:
            q = _quadform(np.atleast_2d(np.asarray(g.k_matrix, dtype=float)), v)
        q = _positive('v^T K(Z) v', q)
        return LinRegOverlap(_prob_abs_normal_le(z * (s + st) * nv / (np.sqrt(2) * np.sqrt(q))), False)
    if g.v_tilde is None:
        raise errors.InvalidArgument(f'case={case} requires v_tilde')
    nvt = float(np.linalg.norm(np.asarray(g.v_tilde, dtype=float)))
    sd = _positive('sigma_dagger', g.sigma_dagger)
    r = _positive('|v|^2 + |v_tilde|^2', nv**2 + nvt**2)
    if case == LINREG_CORRECT:
        return LinRegOverlap(_prob_abs_normal_le(z * (s * nv + st * nvt) / (sd * np.sqrt(r))), False)
    if case == LINREG_RANDOM_DESIGN_BOUND:
        delta = g.offset / (sd * np.sqrt(r))
        a = z * np.sqrt(s**2 + st**2) / sd
        return LinRegOverlap(float(special.ndtr(a - delta) - special.ndtr(-a - delta)), True)
    raise errors.InvalidArgument(
        f'case={case} not one of {LINREG_CORRECT}, {LINREG_FIXED_DESIGN}, {LINREG_RANDOM_DESIGN_BOUND}',
    )


def estimate_overlap(pair_source, fit, u, levels, r, mode=MOMENT_MATCHED, parallelism=None):
    """Monte Carlo overlap probabilities over replicate dataset pairs

    Args:
      * pair_source: callable replicate index -> (dataset, dataset), deterministic
      * fit: callable dataset -> vector posterior or bagged posterior
      * u: (k, D) directions, or one direction
      * levels: credible levels 1 - alpha
      * r: number of replicate pairs
      * mode: interval mode for bagged posteriors

    Returns:
      * :class:`OverlapReport`
    """
    if r < 1:
        raise errors.InvalidArgument(f'r={r} must be >= 1')
    U = np.atleast_2d(np.asarray(u, dtype=float))
    levels = list(levels)

    def _replicate(i):
        try:
            posteriors = [fit(d) for d in pair_source(i)]
            res = []
            for l in levels:
                a, b = [interval_arrays(p, U, 1 - l, mode) for p in posteriors]
                res.append(np.maximum(a[0], b[0]) <= np.minimum(a[1], b[1]))
        except (errors.FitFailure, errors.AllComponentsFailed) as e:
            pkdlog('replicate={} excluded: {}', i, e)
            return None
        return np.array(res)

    ind = [x for x in parallel.map_ordered(_replicate, range(r), parallelism) if x is not None]
    if not ind:
        raise errors.AllReplicatesFailed(f'all {r} replicates failed to fit')
    if len(ind) < r:
        pkdlog('excluded {} of {} replicates', r - len(ind), r)
    p = np.mean(ind, axis=0)
    return OverlapReport(
        [
            PKDict(direction_id=k, level=l, overlap_prob=float(p[j, k]), replicates=len(ind))
            for j, l in enumerate(levels)
            for k in range(U.shape[0])
        ],
    )
