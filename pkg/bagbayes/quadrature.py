"""quadrature.py

Gauss-Kronrod quadrature and the brute-force posterior moment oracle used to
check the closed-form conjugate updates

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
from scipy.special import logsumexp

from bagbayes import errors

# 15-point Kronrod nodes & weights on [0,1] half of [-1,1]
_XS = [
    0.0, 0.207784955007898467600689403773245, 0.405845151377397166906606412076961,
    0.586087235467691130294144845693013, 0.741531185599394439863864773280788,
    0.864864423359769072789712788640926, 0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
]
_WS = [
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970,
]
NODES = np.array([-x for x in _XS[:0:-1]] + _XS)
WEIGHTS = np.array(_WS[:0:-1] + _WS)


def _panels(bounds, nsplit):
    """Scaled nodes & weights of a composite rule over bounds"""

    edges = np.linspace(bounds[0], bounds[1], nsplit + 1)
    half = np.diff(edges)[:, None] / 2
    xs = (edges[:-1, None] + half) + half * NODES
    ws = half * WEIGHTS
    return xs.ravel(), ws.ravel()


def kronrod15(fun, bounds, nsplit=1, fun_args={}):
    """A composite 15-point Gauss-Kronrod quadrature integrator

    Args:
      * fun: vectorized function to be integrated
      * bounds: bounds of integration
      * nsplit: number of equal sub-intervals (default 1, no splitting)
      * fun_args: keyword arguments passed to fun
    """

    xs, ws = _panels(bounds, nsplit)
    return ws @ fun(xs, **fun_args)


def posterior_moments(log_density, bounds, nsplit=200):
    """Mean & covariance of an unnormalized density by tensor-product quadrature

    Args:
      * log_density: vectorized log density taking an (n, D) array of points
      * bounds: list of (low, high) per dimension, D <= 2
      * nsplit: sub-intervals per dimension

    Returns:
      * mean: length-D vector
      * cov: (D, D) matrix
    """

    if len(bounds) not in (1, 2):
        raise errors.InvalidArgument("quadrature oracle supports one or two dimensions")
    rules = [_panels(b, nsplit) for b in bounds]
    if len(rules) == 1:
        pts = rules[0][0][:, None]
        lw = np.log(rules[0][1])
    else:
        g0, g1 = np.meshgrid(rules[0][0], rules[1][0], indexing="ij")
        w0, w1 = np.meshgrid(rules[0][1], rules[1][1], indexing="ij")
        pts = np.column_stack((g0.ravel(), g1.ravel()))
        lw = np.log(w0.ravel()) + np.log(w1.ravel())

    # Normalize in log space so steep likelihoods do not underflow
    lp = lw + log_density(pts)
    p = np.exp(lp - logsumexp(lp))
    mean = p @ pts
    dev = pts - mean
    return mean, np.einsum("i,ij,ik->jk", p, dev, dev)
