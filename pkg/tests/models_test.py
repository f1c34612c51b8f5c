# -*- coding: utf-8 -*-
u"""test bagbayes.models

Conjugate posteriors are checked against brute-force quadrature of
prior x likelihood.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
import pytest


def _random_pd(rng, d, floor=0.5):
    import numpy as np

    a = rng.normal(size=(d, d))
    return a @ a.T / d + floor * np.eye(d)


def test_gaussian_location_examples():
    from bagbayes import models
    from pykern import pkunit
    import numpy as np

    p = models.GaussianLocationModel([[1.0]], [[1.0]]).posterior(models.LocationData([2.0]))
    pkunit.pkok(np.allclose([p.mean[0], p.cov[0, 0]], [1.0, 0.5]), 'mean={} cov={}', p.mean, p.cov)
    p = models.GaussianLocationModel(1.0).posterior(models.LocationData([3.0, 5.0]))
    pkunit.pkok(np.allclose([p.mean[0], p.cov[0, 0]], [4.0, 0.5]), 'mean={} cov={}', p.mean, p.cov)
    p = models.GaussianLocationModel(np.eye(2)).posterior(models.LocationData([[1.0, -2.0], [-1.0, 2.0]]))
    pkunit.pkeq([0.0, 0.0], p.mean.tolist())
    m = models.GaussianLocationModel([[2.0]], [[0.5]])
    pkunit.pkok(np.allclose(m.shrinkage(4), [[1 / (0.5 * 2 / 4 + 1)]]), 'R_n')
    pkunit.pkok(np.allclose(m.posterior_covariance(4), [[1 / (0.5 + 4 / 2)]]), 'V_n')
    rng = np.random.default_rng(2)
    m = models.GaussianLocationModel(_random_pd(rng, 3), _random_pd(rng, 3, 0.2))
    data = models.LocationData(rng.normal(size=(4, 3)))
    pkunit.pkok(
        np.allclose(m.shrinkage(4) @ data.x.mean(axis=0), m.posterior(data).mean),
        'posterior mean must be R_n xbar',
    )


def test_gaussian_location_errors():
    from bagbayes import errors, models
    from pykern import pkunit

    with pkunit.pkexcept(errors.ModelConstructionError):
        models.GaussianLocationModel([[1.0, 2.0], [2.0, 1.0]])
    with pkunit.pkexcept(errors.ModelConstructionError):
        models.GaussianLocationModel([[1.0]], [[-1.0]])
    with pkunit.pkexcept(errors.InvalidArgument):
        models.GaussianLocationModel(1.0).posterior(models.RegressionData([[1.0]], [1.0]))
    with pkunit.pkexcept(errors.InvalidArgument):
        models.GaussianLocationModel(1.0).posterior(models.LocationData([[1.0, 2.0]]))
    with pkunit.pkexcept(errors.InvalidArgument):
        models.LocationData([float('nan')])


def test_gaussian_location_quadrature():
    from bagbayes import models, quadrature
    from pykern import pkunit
    import numpy as np

    rng = np.random.default_rng(11)
    for case in range(20):
        d = 1 + case % 2
        n = 1 + case % 5
        v = _random_pd(rng, d)
        v0_inv = np.zeros((d, d)) if case % 3 == 0 else _random_pd(rng, d, 0.1) / 2
        m = models.GaussianLocationModel(v, v0_inv)
        data = models.LocationData(rng.normal(size=(n, d)) * 2 + 1)
        xbar = data.x.mean(axis=0)
        w = 12 * np.sqrt(np.diag(v) / n) + np.linalg.norm(xbar)
        bounds = [(min(0, x) - r, max(0, x) + r) for x, r in zip(xbar, w)]
        qm, qc = quadrature.posterior_moments(m.log_posterior(data), bounds, nsplit=200 if d == 1 else 60)
        p = m.posterior(data)
        pkunit.pkok(np.allclose(p.mean, qm, rtol=1e-6, atol=1e-8), 'case={} mean={} quadrature={}', case, p.mean, qm)
        pkunit.pkok(np.allclose(p.cov, qc, rtol=1e-6, atol=1e-9), 'case={} cov={} quadrature={}', case, p.cov, qc)


def test_nig_examples():
    from bagbayes import errors, models
    from pykern import pkunit
    import numpy as np

    m = models.NIGRegressionModel(2.0, 1.0, 1.0)
    p = m.posterior(models.RegressionData([[1.0]], [0.0]))
    pkunit.pkok(
        np.allclose([p.mu[0], p.precision[0, 0], p.a, p.b], [0.0, 2.0, 2.5, 1.0]),
        'mu={} precision={} a={} b={}', p.mu, p.precision, p.a, p.b,
    )
    f = models.nig_marginal_functional(p, [1.0])
    pkunit.pkeq(0.0, f.center)
    pkunit.pkeq(5.0, f.dof)
    g = models.nig_marginal_functional(p, [2.0])
    pkunit.pkok(abs(g.scale - 2 * f.scale) < 1e-14 and g.dof == f.dof, 'scale must double')
    p = m.posterior(models.RegressionData([[1.0], [1.0]], [1.0, 3.0]))
    pkunit.pkok(
        np.allclose([p.mu[0], p.a, p.b], [4 / 3, 3.0, 10 / 3]),
        'mu={} a={} b={}', p.mu, p.a, p.b,
    )
    pkunit.pkok(abs(p.functional([1.0]).center - 4 / 3) < 1e-14, 'center')
    p = m.posterior(models.RegressionData([[1.0, 2.0], [0.5, -1.0], [2.0, 0.0]], np.zeros(3)))
    pkunit.pkeq([0.0, 0.0], p.mu.tolist())
    with pkunit.pkexcept(errors.InvalidArgument):
        models.nig_marginal_functional(p, [0.0, 0.0])
    with pkunit.pkexcept(errors.ModelConstructionError):
        models.NIGRegressionModel(0.0)
    c = models.posterior_from_json(p.to_json())
    pkunit.pkok(np.allclose(c.cov, p.cov), 'from_json cov')


def test_nig_quadrature():
    """Moments of beta by quadrature over (beta, log sigma^2)"""
    from bagbayes import models, quadrature
    from pykern import pkunit
    import numpy as np

    rng = np.random.default_rng(5)
    for case in range(5):
        n = 3 + case % 3
        data = models.RegressionData(rng.normal(size=(n, 1)), rng.normal(size=n) * 2)
        m = models.NIGRegressionModel(2.0, 1.0 + case / 4, 0.5 + case / 5)
        lp = m.log_posterior(data)
        p = m.posterior(data)
        s = np.sqrt(p.b / p.a / p.precision[0, 0])
        t = np.log(p.b / p.a)
        qm, qc = quadrature.posterior_moments(
            lambda x: lp(np.column_stack((x[:, 0], np.exp(x[:, 1])))) + x[:, 1],
            [(p.mu[0] - 40 * s, p.mu[0] + 40 * s), (t - 8, t + 10)],
            nsplit=100,
        )
        pkunit.pkok(abs(qm[0] - p.mean[0]) < 1e-5 * (1 + abs(p.mean[0])), 'case={} mean={} quadrature={}', case, p.mean, qm)
        pkunit.pkok(abs(qc[0, 0] / p.cov[0, 0] - 1) < 1e-5, 'case={} var={} quadrature={}', case, p.cov, qc)


def test_flat_linreg():
    from bagbayes import errors, models, quadrature
    from pykern import pkunit
    import numpy as np

    data = models.RegressionData([[1.0], [1.0]], [1.0, 3.0])
    f = models.flat_linreg_functional(models.FlatLinRegModel(1.0), data, [1.0])
    pkunit.pkok(np.allclose([f.center, f.scale**2], [2.0, 0.5]), 'center={} var={}', f.center, f.scale**2)
    g = models.flat_linreg_functional(models.FlatLinRegModel(2.0), data, [1.0])
    pkunit.pkok(abs(g.scale**2 - 1.0) < 1e-14 and g.center == f.center, 'doubling sigma2 doubles variance')
    z = np.array([[1.0, 0.5], [0.0, 1.0], [2.0, -1.0]])
    b = np.array([1.5, -2.0])
    f = models.flat_linreg_functional(models.FlatLinRegModel(1.0), models.RegressionData(z, z @ b), [3.0, 1.0])
    pkunit.pkok(abs(f.center - 2.5) < 1e-12, 'interpolation center={}', f.center)
    with pkunit.pkexcept(errors.RankDeficiency):
        models.FlatLinRegModel(1.0).posterior(models.RegressionData([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0]))
    rng = np.random.default_rng(8)
    for case in range(20):
        d = 1 + case % 2
        n = d + 1 + case % 4
        data = models.RegressionData(rng.normal(size=(n, d)), rng.normal(size=n))
        m = models.FlatLinRegModel(0.5 + case / 10)
        c = np.linalg.lstsq(data.z, data.y, rcond=None)[0]
        s = np.sqrt(m.sigma2 * np.diag(np.linalg.inv(data.z.T @ data.z)))
        qm, qc = quadrature.posterior_moments(
            m.log_posterior(data),
            [(x - 12 * r, x + 12 * r) for x, r in zip(c, s)],
            nsplit=200 if d == 1 else 60,
        )
        p = m.posterior(data)
        pkunit.pkok(np.allclose(p.mean, qm, rtol=1e-6, atol=1e-8), 'case={} mean={} quadrature={}', case, p.mean, qm)
        pkunit.pkok(np.allclose(p.cov, qc, rtol=1e-6, atol=1e-9), 'case={} cov={} quadrature={}', case, p.cov, qc)


def test_log_predictive():
    from bagbayes import models
    from pykern import pkunit
    import numpy as np
    from scipy import stats

    data = models.RegressionData([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [1.0, 2.0, 2.5])
    p = models.FlatLinRegModel(0.7).posterior(data)
    z = np.array([[0.5, -1.0], [2.0, 1.0]])
    y = np.array([0.0, 3.0])
    s = np.sqrt(0.7 * (1 + np.einsum('ij,jk,ik->i', z, np.linalg.inv(data.z.T @ data.z), z)))
    pkunit.pkok(np.allclose(p.log_predictive(z, y), stats.norm.logpdf(y, z @ p.mean, s)), 'flat predictive')
    n = models.NIGRegressionModel().posterior(data)
    s = np.sqrt(n.b / n.a * (1 + np.einsum('ij,jk,ik->i', z, np.linalg.inv(n.precision), z)))
    pkunit.pkok(np.allclose(n.log_predictive(z, y), stats.t.logpdf(y, 2 * n.a, z @ n.mu, s)), 'NIG predictive')


def test_residual_variance():
    from bagbayes import errors, models
    from pykern import pkunit

    pkunit.pkeq(2.0, models.residual_variance(models.RegressionData([[1.0], [1.0]], [1.0, 3.0])))
    with pkunit.pkexcept(errors.InsufficientData):
        models.residual_variance(models.RegressionData([[1.0]], [1.0]))


def test_row_permutation():
    from bagbayes import models
    from pykern import pkunit
    import numpy as np

    rng = np.random.default_rng(21)
    p = rng.permutation(12)

    def _same(a, b, what):
        pkunit.pkok(
            np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a)),
            '{} changed under row permutation: {} != {}', what, a, b,
        )

    x = rng.normal(size=(12, 2))
    m = models.GaussianLocationModel([[2.0, 0.3], [0.3, 1.0]], [[0.5, 0.0], [0.0, 0.1]])
    a, b = m.posterior(models.LocationData(x)), m.posterior(models.LocationData(x[p]))
    _same(a.mean, b.mean, 'location mean')
    _same(a.cov, b.cov, 'location cov')
    z = rng.normal(size=(12, 3))
    y = rng.normal(size=12)
    d, e = models.RegressionData(z, y), models.RegressionData(z[p], y[p])
    a, b = models.NIGRegressionModel(2.0, 1.0, 0.5).posterior(d), models.NIGRegressionModel(2.0, 1.0, 0.5).posterior(e)
    _same(a.mu, b.mu, 'NIG mu')
    _same(a.precision, b.precision, 'NIG precision')
    _same(np.array([a.a, a.b]), np.array([b.a, b.b]), 'NIG shape & scale')
    a, b = models.FlatLinRegModel(1.5).posterior(d), models.FlatLinRegModel(1.5).posterior(e)
    _same(a.mean, b.mean, 'flat mean')
    _same(a.cov, b.cov, 'flat cov')
