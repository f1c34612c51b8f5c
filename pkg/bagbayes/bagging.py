# -*- coding: utf-8 -*-
u"""Bagged posteriors: exact enumeration, Monte Carlo approximation & summaries

The bagged posterior averages the standard posterior over bootstrap datasets
of size M drawn with replacement from the data. :func:`bag_exact` enumerates
every multiset of indices with its multinomial probability;
:func:`bag_monte_carlo` averages B independent bootstrap fits.

JSON schema of :meth:`BaggedPosterior.to_json`::

    {
      "m": int,                      # bootstrap dataset size
      "weights": [float, ...],       # one per component, sum to 1
      "skipped": int,                # fits that failed & were dropped
      "provenance": "exact-enumeration" | [[root_seed, [index, ...]], ...],
      "components": [{"kind": "gaussian"|"student"|"nig"|"flat_linreg", ...}, ...]
    }

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from bagbayes import constants, distributions, errors, models, parallel, randstream
from pykern.pkdebug import pkdc, pkdlog
from scipy import special
import dataclasses
import itertools
import numpy as np

EXACT_ENUMERATION = 'exact-enumeration'


class BaggedPosterior:
    """Weighted mixture of component posteriors

    Args:
      * components: list of posteriors sharing one parameter dimension
      * weights: mixture weights summing to 1
      * m: bootstrap dataset size
      * provenance: ``EXACT_ENUMERATION`` or one :class:`SeedPath` per component
      * skipped: count of component fits that failed
    """

    def __init__(self, components, weights, m, provenance, skipped=0):
        weights = np.asarray(weights, dtype=float)
        if not components or len(components) != len(weights):
            raise errors.InvalidArgument('need one weight per component and at least one component')
        if abs(weights.sum() - 1) > constants.WEIGHT_TOL or np.any(weights < 0):
            raise errors.InvalidArgument(f'weights sum={weights.sum()} is not 1')
        if len({c.d for c in components}) != 1:
            raise errors.InvalidArgument('components have different parameter dimensions')
        if provenance != EXACT_ENUMERATION and len(provenance) != len(components):
            raise errors.InvalidArgument('need one seed path per component')
        self.components = list(components)
        self.weights = weights
        self.m = int(m)
        self.provenance = provenance
        self.skipped = int(skipped)

    @property
    def b(self):
        return len(self.components)

    @property
    def d(self):
        return self.components[0].d

    def functional_arrays(self, U):
        """Component centers & scales of u^T theta for each row u of U

        Returns:
          * centers: (k, B)
          * scales: (k, B)
          * dofs: None (Gaussian components) or length-B array
        """
        r = [c.functional_arrays(U) for c in self.components]
        d = [x[2] for x in r]
        if all(x is None for x in d):
            dofs = None
        elif any(x is None for x in d):
            raise errors.InvalidArgument('components mix Gaussian and Student-t families')
        else:
            dofs = np.array(d, dtype=float)
        return (
            np.column_stack([x[0] for x in r]),
            np.column_stack([x[1] for x in r]),
            dofs,
        )

    def to_json(self):
        return {
            'm': self.m,
            'weights': self.weights.tolist(),
            'skipped': self.skipped,
            'provenance': self.provenance if self.provenance == EXACT_ENUMERATION
                else [p.to_json() for p in self.provenance],
            'components': [c.to_json() for c in self.components],
        }

    @classmethod
    def from_json(cls, value):
        p = value['provenance']
        return cls(
            components=[models.posterior_from_json(c) for c in value['components']],
            weights=value['weights'],
            m=value['m'],
            provenance=p if p == EXACT_ENUMERATION else [randstream.SeedPath.from_json(x) for x in p],
            skipped=value.get('skipped', 0),
        )


@dataclasses.dataclass(frozen=True)
class BaggedMoments:
    """Mean & covariance of a bagged posterior split by the law of total covariance"""

    mean: np.ndarray
    cov: np.ndarray
    within_cov: np.ndarray
    between_cov: np.ndarray

    def to_json(self):
        return {k: getattr(self, k).tolist() for k in ('mean', 'cov', 'within_cov', 'between_cov')}


@dataclasses.dataclass(frozen=True)
class ChooseBDiagnostic:
    """Monte Carlo standard errors of the bagged mean & sd of u^T theta"""

    se_mean: float
    se_sd: float
    b: int

    def to_json(self):
        return dataclasses.asdict(self)


def _fit(model, data):
    try:
        return model.posterior(data)
    except errors.FitFailure as e:
        pkdc('component fit failed: {}', e)
        return None


def _assemble(fits, weights, m, provenance):
    ok = [i for i, f in enumerate(fits) if f is not None]
    skipped = len(fits) - len(ok)
    if not ok:
        raise errors.AllComponentsFailed(f'all {len(fits)} bootstrap component fits failed')
    if skipped:
        pkdlog('skipped {} of {} bootstrap components', skipped, len(fits))
    w = np.asarray(weights, dtype=float)[ok]
    return BaggedPosterior(
        components=[fits[i] for i in ok],
        weights=w / w.sum(),
        m=m,
        provenance=provenance if provenance == EXACT_ENUMERATION else [provenance[i] for i in ok],
        skipped=skipped,
    )


def bag_exact(model, data, m=None, cap=constants.ENUMERATION_CAP, parallelism=None):
    """Bagged posterior by enumerating all N^M bootstrap sequences

    Sequences with the same index multiset give the same posterior, so one
    component is kept per multiset with weight M!/(prod k_i!) N^-M.

    Args:
      * model: :class:`models.ConjugateModel`
      * data: dataset
      * m: bootstrap size (default N)
      * cap: largest N^M accepted

    Returns:
      * :class:`BaggedPosterior`
    """
    n = data.n
    m = n if m is None else int(m)
    if m < 1:
        raise errors.InvalidArgument(f'm={m} must be >= 1')
    if n ** m > cap:
        raise errors.TooLarge(
            f'N^M={n}^{m} exceeds enumeration cap={cap}; use bag_monte_carlo',
        )
    counts = [
        np.bincount(c, minlength=n)
        for c in itertools.combinations_with_replacement(range(n), m)
    ]
    w = [
        np.exp(special.gammaln(m + 1) - special.gammaln(c + 1).sum() - m * np.log(n))
        for c in counts
    ]
    fits = parallel.map_ordered(
        lambda c: _fit(model, randstream.resample(data, randstream.BootstrapCounts(c, m))),
        counts,
        parallelism,
    )
    return _assemble(fits, w, m, EXACT_ENUMERATION)


def bag_monte_carlo(model, data, m=None, b=constants.DEFAULT_B, root=None, parallelism=None):
    """Bagged posterior approximated by B bootstrap datasets

    Component i uses the substream ``root.child(i)``. Components whose fit
    fails are skipped and the remaining weights renormalized.

    Args:
      * model: :class:`models.ConjugateModel`
      * data: dataset
      * m: bootstrap size (default N)
      * b: number of bootstrap datasets
      * root: :class:`randstream.SeedPath`

    Returns:
      * :class:`BaggedPosterior`
    """
    if b < 1:
        raise errors.InvalidArgument(f'b={b} must be >= 1')
    if root is None:
        raise errors.InvalidArgument('root seed path is required')
    m = data.n if m is None else int(m)
    paths = [root.child(i) for i in range(b)]
    fits = parallel.map_ordered(
        lambda p: _fit(model, randstream.resample(data, randstream.draw_counts(data.n, m, p))),
        paths,
        parallelism,
    )
    return _assemble(fits, np.full(b, 1.0 / b), m, paths)


def bagged_moments(bp):
    """mean = sum w mu_b, within = sum w Sigma_b, between = sum w (mu_b - mean)(mu_b - mean)^T"""
    w = bp.weights
    means = np.array([c.mean for c in bp.components])
    covs = np.array([c.cov for c in bp.components])
    mean = w @ means
    dev = means - mean
    within = np.einsum('b,bij->ij', w, covs)
    between = np.einsum('b,bi,bj->ij', w, dev, dev)
    return BaggedMoments(mean=mean, cov=within + between, within_cov=within, between_cov=between)


def gaussian_location_bagged_moments_closed_form(model, data, m=None):
    """Bagged moments of the Gaussian location model without resampling

    mean = R_M xbar_N, within = V_M, between = M^-1 R_M Sigmahat_N R_M with
    Sigmahat_N the sample covariance using divisor N.
    """
    model._check_data(data)
    m = data.n if m is None else int(m)
    r = model.shrinkage(m)
    xbar = data.x.mean(axis=0)
    dev = data.x - xbar
    between = r @ (dev.T @ dev / data.n) @ r.T / m
    between = (between + between.T) / 2
    within = model.posterior_covariance(m)
    return BaggedMoments(mean=r @ xbar, cov=within + between, within_cov=within, between_cov=between)


def bagged_predictive_log_density(bp, z_new, y_new):
    """log sum_b w_b p_b(y_new | z_new), the mixture predictive

    Args:
      * bp: bagged posterior of a regression model
      * z_new: (k, D) regressors or one length-D row
      * y_new: length-k outcomes or a scalar

    Returns:
      * length-k array, or float for a single point
    """
    z = np.atleast_2d(np.asarray(z_new, dtype=float))
    y = np.atleast_1d(np.asarray(y_new, dtype=float))
    r = distributions.mixture_logpdf(
        np.column_stack([c.log_predictive(z, y) for c in bp.components]),
        bp.weights,
    )
    return float(r[0]) if np.ndim(y_new) == 0 else r


def choose_b_diagnostic(bp, u):
    """Monte Carlo standard errors for deciding whether B is large enough

    The mean's error is the component-mean sd (divisor B-1) over sqrt(B).
    The sd's error comes from the delta method applied to
    sd = sqrt(E[s] - E[c]^2) with c the component means and s the component
    second moments.

    Args:
      * bp: equal-weight bagged posterior with B >= 2
      * u: direction of the scalar functional

    Returns:
      * :class:`ChooseBDiagnostic`
    """
    if bp.b < 2:
        raise errors.InsufficientComponents(f'B={bp.b} components; need at least 2')
    if np.ptp(bp.weights) > constants.WEIGHT_TOL:
        raise errors.InvalidArgument('choose-B diagnostic requires equal weights')
    c, s, dofs = bp.functional_arrays(np.atleast_2d(u))
    c = c[0]
    second = s[0] ** 2 * distributions.std_variance(dofs) + c ** 2
    b = bp.b
    se_mean = float(np.std(c, ddof=1) / np.sqrt(b))
    sd = np.sqrt(max(second.mean() - c.mean() ** 2, 0.0))
    if sd == 0:
        return ChooseBDiagnostic(se_mean=se_mean, se_sd=0.0, b=b)
    g = np.array([1 / (2 * sd), -c.mean() / sd])
    cov = np.cov(np.vstack([second, c]), ddof=1) / b
    return ChooseBDiagnostic(se_mean=se_mean, se_sd=float(np.sqrt(max(g @ cov @ g, 0.0))), b=b)
