"""distributions.py

Location-scale distribution functions and their equal- or unequal-weight
mixtures, vectorized over many scalar functionals at once

LICENSE STATEMENT

Copyright 2026 RadiaSoft LLC

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""

import numpy as np
from scipy import special

from bagbayes import constants, errors

# Note: in all functions below, "centers" & "scales" have shape (k, B): k scalar
# functionals (e.g. test directions), each a mixture of B location-scale
# components. "dofs" is None for Gaussian components or a length-B array of
# Student-t degrees of freedom.


def std_ppf(p, dof=None):
    """Quantile of the standard normal (dof None) or standard Student-t"""

    if dof is None:
        return special.ndtri(p)
    return special.stdtrit(dof, p)


def std_cdf(x, dof=None):
    """CDF of the standard normal (dof None) or standard Student-t"""

    if dof is None:
        return special.ndtr(x)
    return special.stdtr(dof, x)


def std_logpdf(x, dof=None):
    """Log density of the standard normal (dof None) or standard Student-t"""

    x = np.asarray(x, dtype=float)
    if dof is None:
        return -0.5 * (x**2 + np.log(2 * np.pi))
    return (
        special.gammaln((dof + 1) / 2) - special.gammaln(dof / 2)
        - 0.5 * np.log(dof * np.pi) - (dof + 1) / 2 * np.log1p(x**2 / dof)
    )


def std_variance(dof=None):
    """Variance of the standard normal or Student-t (requires dof > 2)"""

    if dof is None:
        return 1.0
    dof = np.asarray(dof, dtype=float)
    if np.any(dof <= 2):
        raise errors.NumericalDegeneracy(f"Student-t variance requires dof > 2, got dof={dof.min()}")
    return dof / (dof - 2)


def mixture_cdf(x, centers, scales, weights, dofs=None):
    """Mixture CDF evaluated at one point per functional

    Args:
      * x: length-k evaluation points
      * centers, scales: (k, B) component locations & scales
      * weights: length-B mixture weights
      * dofs: None or length-B degrees of freedom
    """

    z = (np.asarray(x, dtype=float)[:, None] - centers) / scales
    return std_cdf(z, dofs) @ weights


def mixture_ppf(q, centers, scales, weights, dofs=None, xtol=constants.QUANTILE_XTOL):
    """Mixture quantiles by vectorized bisection

    The q-quantile of a mixture lies between the smallest & largest component
    q-quantiles, which bracket every bisection.

    Args:
      * q: probability in (0, 1)
      * centers, scales: (k, B) component locations & scales
      * weights: length-B mixture weights
      * dofs: None or length-B degrees of freedom
      * xtol: absolute bracket width at termination

    Returns:
      * length-k quantiles
    """

    comp = centers + scales * std_ppf(q, dofs)
    lo = comp.min(axis=1)
    hi = comp.max(axis=1)

    # Halving the widest bracket is enough; 200 halvings exceed double precision
    for _ in range(200):
        if np.all(hi - lo <= xtol):
            break
        mid = (lo + hi) / 2
        below = mixture_cdf(mid, centers, scales, weights, dofs) < q
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return (lo + hi) / 2


def mixture_moments(centers, scales, weights, dofs=None):
    """Mean & variance of each of k scalar mixtures"""

    var = scales**2 * std_variance(dofs)
    mean = centers @ weights
    return mean, (var + centers**2) @ weights - mean**2


def mixture_logpdf(log_densities, weights):
    """Log of the weighted average of component densities

    Args:
      * log_densities: (..., B) component log densities
      * weights: length-B mixture weights
    """

    return special.logsumexp(log_densities, b=weights, axis=-1)
