# -*- coding: utf-8 -*-
u"""test bagbayes.quadrature

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
import pytest


def test_kronrod15():
    from bagbayes import quadrature
    from pykern import pkunit
    import numpy as np

    for f, b, a in (
        (lambda x: 3 * x**2, (0, 1), 1.0),
        (np.sin, (0, np.pi), 2.0),
        (lambda x: np.log(x) / x, (1, np.e), 0.5),
    ):
        pkunit.pkeq(a, round(quadrature.kronrod15(f, b), 9))
    v = quadrature.kronrod15(lambda x, w: np.sin(w * x), (0, np.pi / 2), nsplit=4, fun_args={'w': 2})
    pkunit.pkok(abs(v - 1) < 1e-12, 'sin(2x) integral={}', v)


def test_posterior_moments():
    from bagbayes import quadrature
    from pykern import pkunit
    import numpy as np

    m, c = quadrature.posterior_moments(lambda t: -0.5 * ((t[:, 0] - 1.5) / 2) ** 2, [(-30, 30)])
    pkunit.pkok(abs(m[0] - 1.5) < 1e-10, 'mean={}', m)
    pkunit.pkok(abs(c[0, 0] - 4) < 1e-9, 'var={}', c)
    p = np.linalg.inv(np.array([[2.0, 0.6], [0.6, 1.0]]))
    m, c = quadrature.posterior_moments(
        lambda t: -0.5 * np.einsum('ij,jk,ik->i', t - [1, -1], p, t - [1, -1]),
        [(-14, 16), (-12, 10)],
        nsplit=60,
    )
    pkunit.pkok(np.allclose(m, [1, -1], atol=1e-9), 'mean={}', m)
    pkunit.pkok(np.allclose(c, [[2.0, 0.6], [0.6, 1.0]], atol=1e-8), 'cov={}', c)
    with pkunit.pkexcept(ValueError):
        quadrature.posterior_moments(lambda t: t[:, 0], [(0, 1)] * 3)
