# -*- coding: utf-8 -*-
u"""test bagbayes.overlap

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
import pytest

_Z = 1.959963984540054


def _p(x):
    """Pr(|W| <= x) for W ~ N(0, 1)"""
    from scipy import special

    return 2 * special.ndtr(x) - 1


def _near(expect, actual, tol):
    from pykern import pkunit

    pkunit.pkok(abs(expect - actual) < tol, 'expect={} actual={}', expect, actual)


def test_central_interval():
    from bagbayes import errors, models, overlap
    from pykern import pkunit

    i = overlap.central_interval(models.GaussianPosterior([0.0], [[1.0]]), 0.05)
    _near(-_Z, i.lower, 1e-8)
    _near(_Z, i.upper, 1e-8)
    pkunit.pkeq(0.95, i.level)
    i = overlap.central_interval(models.GaussianPosterior([3.0], [[4.0]]), 0.05)
    _near(3 - 2 * _Z, i.lower, 1e-8)
    _near(3 + 2 * _Z, i.upper, 1e-8)
    i = overlap.central_interval(models.StudentScalarPosterior(0.0, 1.0, 1e6), 0.05)
    _near(_Z, i.upper, 1e-3)
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.central_interval(models.GaussianPosterior([0.0], [[1.0]]), 1.0)


def test_bagged_interval():
    from bagbayes import bagging, models, overlap
    from pykern import pkunit
    import numpy as np
    from scipy import stats

    g = models.GaussianPosterior([1.0], [[4.0]])
    bp = bagging.BaggedPosterior([g], [1.0], 1, bagging.EXACT_ENUMERATION)
    c = overlap.central_interval(g, 0.1)
    for m in overlap.INTERVAL_MODES:
        i = overlap.bagged_interval(bp, [1.0], 0.1, m)
        _near(c.lower, i.lower, 1e-8)
        _near(c.upper, i.upper, 1e-8)
    bp = bagging.BaggedPosterior(
        [models.GaussianPosterior([0.0], [[1.0]]), models.GaussianPosterior([4.0], [[1.0]])],
        [0.5, 0.5],
        1,
        bagging.EXACT_ENUMERATION,
    )
    i = overlap.bagged_interval(bp, [1.0], 0.05, overlap.MIXTURE_QUANTILE)
    x = np.linspace(-5, 9, 1400001)
    cdf = 0.5 * stats.norm.cdf(x) + 0.5 * stats.norm.cdf(x - 4)
    _near(x[np.searchsorted(cdf, 0.025)], i.lower, 2e-5)
    _near(x[np.searchsorted(cdf, 0.975)], i.upper, 2e-5)
    m = overlap.bagged_interval(bp, [1.0], 0.05, overlap.MOMENT_MATCHED)
    _near(2 - _Z * np.sqrt(5), m.lower, 1e-8)
    _near(2 + _Z * np.sqrt(5), m.upper, 1e-8)


def test_intervals_overlap():
    from bagbayes import errors, overlap
    from pykern import pkunit

    c = overlap.CredibleInterval
    pkunit.pkeq(True, overlap.intervals_overlap(c(0, 1, 0.9), c(1, 2, 0.9)))
    pkunit.pkeq(False, overlap.intervals_overlap(c(0, 1, 0.9), c(2, 3, 0.9)))
    pkunit.pkeq(True, overlap.intervals_overlap(c(0, 3, 0.9), c(1, 2, 0.9)))
    with pkunit.pkexcept(errors.InvalidArgument):
        c(1, 0, 0.9)


def test_overlap_bound():
    from bagbayes import overlap

    _near(0.9025, overlap.overlap_bound(0.05, 0.05), 1e-15)
    _near(0.7, overlap.overlap_bound(0, 0.3), 1e-15)
    _near(0.72, overlap.overlap_bound(0.2, 0.1), 1e-15)


def test_asymptotic_overlap_location():
    from bagbayes import errors, overlap
    from pykern import pkunit
    import numpy as np

    _near(_p(_Z * 2**0.5), overlap.asymptotic_overlap_location(1.0, 1.0, [1.0], 0.05), 1e-12)
    _near(0.4206, overlap.asymptotic_overlap_location(1.0, 25.0, [1.0], 0.05), 2e-4)
    v = np.array([[2.0, 0.3], [0.3, 1.0]])
    _near(
        overlap.asymptotic_overlap_location(v, v, [1.0, 2.0], 0.05),
        overlap.asymptotic_overlap_location(v, v, [1.0, 2.0], 0.05, c=2.0, which=overlap.BAGGED),
        1e-14,
    )
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.asymptotic_overlap_location(1.0, 0.0, [1.0], 0.05)
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.asymptotic_overlap_location(1.0, 1.0, [1.0], 0.05, which='other')


def test_growing_dim_overlap():
    from bagbayes import errors, overlap
    from pykern import pkunit

    _near(0.95, overlap.growing_dim_overlap(2.0, 0.05), 1e-12)
    _near(0.7, overlap.growing_dim_overlap(None, 0.05, n=2, m=2, which='bagged-lower-bound'), 1e-3)
    _near(0.95, overlap.growing_dim_overlap(None, 0.05, n=10**7, which='bagged-lower-bound'), 1e-6)
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.growing_dim_overlap(None, 0.05, n=1, which='bagged-lower-bound')
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.growing_dim_overlap(0.0, 0.05)


def test_asymptotic_overlap_regular():
    from bagbayes import errors, overlap
    from pykern import pkunit
    import numpy as np

    j = np.array([[2.0, 0.5], [0.5, 1.0]])
    s = overlap.SandwichInputs(j, j, 1.0, [1.0, -1.0], 0.05)
    _near(_p(_Z * 2**0.5), overlap.asymptotic_overlap_regular(s), 1e-12)
    _near(0.99990, overlap.asymptotic_overlap_regular(s, overlap.BAGGED), 2e-5)
    _near(_p(2 * _Z), overlap.asymptotic_overlap_regular(s, overlap.BAGGED), 1e-12)
    with pkunit.pkexcept(errors.RankDeficiency):
        overlap.asymptotic_overlap_regular(
            overlap.SandwichInputs([[1.0, 1.0], [1.0, 1.0]], np.eye(2), 1.0, [1.0, 0.0], 0.05),
        )
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.SandwichInputs([[1.0, 2.0], [0.0, 1.0]], np.eye(2), 1.0, [1.0, 0.0], 0.05)
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.SandwichInputs(np.eye(2), np.eye(2), 0.0, [1.0, 0.0], 0.05)


def test_bagged_regular_lower_bound():
    from bagbayes import overlap
    from pykern import pkunit
    import numpy as np
    from scipy import special

    rng = np.random.default_rng(21)
    for case in range(200):
        d = 1 + case % 4
        a = rng.normal(size=(d, d))
        b = rng.normal(size=(d, d))
        c = rng.uniform(0.05, 2.0)
        alpha = rng.uniform(0.01, 0.5)
        p = overlap.asymptotic_overlap_regular(
            overlap.SandwichInputs(
                a @ a.T + 0.1 * np.eye(d), b @ b.T + 0.1 * np.eye(d), c, rng.normal(size=d), alpha,
            ),
            overlap.BAGGED,
        )
        lb = 2 * special.ndtr(special.ndtri(1 - alpha / 2) * np.sqrt(2 / c)) - 1
        pkunit.pkok(p >= lb - 1e-12 and lb >= 1 - alpha - 1e-12, 'case={} p={} bound={}', case, p, lb)


def test_linreg_overlap():
    from bagbayes import errors, overlap
    from pykern import pkunit

    g = overlap.LinRegGeometry(v=[0.3, 0.4], v_tilde=[0.3, 0.4], sigma_dagger=1.0)
    r = overlap.linreg_overlap(overlap.LINREG_CORRECT, g, 0.05)
    _near(_p(_Z * 2**0.5), r.probability, 1e-12)
    pkunit.pkeq(False, r.upper_bound)
    r = overlap.linreg_overlap(
        overlap.LINREG_FIXED_DESIGN,
        overlap.LinRegGeometry(v=[1.0, 0.0], k_matrix=[[4.0, 0.0], [0.0, 4.0]]),
        0.05,
    )
    _near(_p(_Z / 2**0.5), r.probability, 1e-12)
    r = overlap.linreg_overlap(overlap.LINREG_RANDOM_DESIGN_BOUND, g, 0.05)
    _near(_p(_Z * 2**0.5), r.probability, 1e-12)
    pkunit.pkeq(True, r.upper_bound)
    shifted = overlap.LinRegGeometry(v=[0.3, 0.4], v_tilde=[0.3, 0.4], sigma_dagger=1.0, offset=1.0)
    pkunit.pkok(
        overlap.linreg_overlap(overlap.LINREG_RANDOM_DESIGN_BOUND, shifted, 0.05).probability < r.probability,
        'mean offset must lower the bound',
    )
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.linreg_overlap(overlap.LINREG_FIXED_DESIGN, overlap.LinRegGeometry(v=[1.0, 0.0], k_quadform=0.0), 0.05)
    with pkunit.pkexcept(errors.InvalidArgument):
        overlap.linreg_overlap(overlap.LINREG_CORRECT, overlap.LinRegGeometry(v=[1.0], sigma_dagger=1.0), 0.05)


def test_estimate_overlap_trivial():
    from bagbayes import errors, models, overlap
    from pykern import pkunit

    const = models.GaussianPosterior([0.0], [[1.0]])
    r = overlap.estimate_overlap(lambda i: (None, None), lambda d: const, [1.0], (0.5, 0.9), 5)
    pkunit.pkeq([1.0, 1.0], [x.overlap_prob for x in r.rows])
    far = {0: models.GaussianPosterior([0.0], [[1e-4]]), 1: models.GaussianPosterior([10.0], [[1e-4]])}
    r = overlap.estimate_overlap(lambda i: (0, 1), lambda d: far[d], [1.0], (0.95,), 1)
    pkunit.pkeq(0.0, r.rows[0].overlap_prob)
    pkunit.pkeq(1.0, r.violation_fraction(0.95))
    f = r.to_frame()
    pkunit.pkeq(list(overlap.REPORT_COLUMNS), list(f.columns))
    pkunit.pkeq(True, bool(f.violated[0]))


def test_estimate_overlap_failures():
    from bagbayes import errors, models, overlap
    from pykern import pkunit

    def _fit(d):
        if d % 2:
            raise errors.RankDeficiency('Z^T Z', 1e20)
        return models.GaussianPosterior([0.0], [[1.0]])

    r = overlap.estimate_overlap(lambda i: (2 * (i % 2), i % 2), _fit, [1.0], (0.9,), 6)
    pkunit.pkeq(3, r.rows[0].replicates)
    with pkunit.pkexcept(errors.AllReplicatesFailed):
        overlap.estimate_overlap(lambda i: (1, 1), _fit, [1.0], (0.9,), 3)


def test_estimate_overlap_bagged_failures():
    from bagbayes import bagging, models, overlap, randstream
    from pykern import pkunit
    import numpy as np

    model = models.FlatLinRegModel(1.0)

    def _pair(i):
        g = randstream.SeedPath(3, (i,)).generator()
        z = np.ones((6, 2)) if i == 0 else g.normal(size=(6, 2))
        return [models.RegressionData(z, g.normal(size=6)) for _ in range(2)]

    def _fit(d):
        return bagging.bag_monte_carlo(model, d, b=5, root=randstream.SeedPath(9), parallelism=1)

    r = overlap.estimate_overlap(_pair, _fit, [1.0, 0.0], (0.9,), 3)
    pkunit.pkeq(2, r.rows[0].replicates)


def test_estimate_overlap_location():
    from bagbayes import models, overlap, randstream
    from pykern import pkunit

    model = models.GaussianLocationModel(1.0)

    def _pair(i):
        g = randstream.SeedPath(5, (i,)).generator()
        return [models.LocationData(g.normal(0, 5, size=100)) for _ in range(2)]

    r = overlap.estimate_overlap(_pair, model.posterior, [1.0], (0.95,), 800, parallelism=2)
    p = r.rows[0].overlap_prob
    pkunit.pkok(abs(p - 0.4206) < 0.09, 'overlap={}', p)
    pkunit.pkeq(1.0, r.violation_fraction(0.95))


def test_estimate_overlap_levels_nested():
    from bagbayes import bagging, models, overlap, randstream
    from pykern import pkunit
    import numpy as np

    model = models.GaussianLocationModel(np.eye(2))
    levels = (0.5, 0.8, 0.9, 0.95, 0.99)
    U = [[1.0, 0.0], [0.0, 1.0], [0.6, 0.8]]

    def _pair(i):
        g = randstream.SeedPath(8, (i,)).generator()
        return [models.LocationData(g.normal(0, 3, size=(30, 2))) for _ in range(2)]

    def _bagged(d):
        return bagging.bag_monte_carlo(model, d, b=10, root=randstream.SeedPath(9), parallelism=1)

    for fit, mode in (model.posterior, overlap.MOMENT_MATCHED), (_bagged, overlap.MOMENT_MATCHED), \
            (_bagged, overlap.MIXTURE_QUANTILE):
        r = overlap.estimate_overlap(_pair, fit, U, levels, 60, mode=mode)
        for k in range(len(U)):
            p = [x.overlap_prob for x in r.rows if x.direction_id == k]
            pkunit.pkok(np.all(np.diff(p) >= 0), 'mode={} direction={} overlap by level={}', mode, k, p)


def test_estimate_overlap_heavy_tails_excluded():
    from bagbayes import bagging, models, overlap, randstream
    from pykern import pkunit
    import numpy as np

    model = models.NIGRegressionModel(a0=0.25, b0=1.0, lam=1.0)

    def _pair(i):
        g = randstream.SeedPath(12, (i,)).generator()
        n = 1 if i == 0 else 5
        return [models.RegressionData(g.normal(size=(n, 1)), g.normal(size=n)) for _ in range(2)]

    def _fit(d):
        return bagging.bag_monte_carlo(model, d, b=4, root=randstream.SeedPath(13), parallelism=1)

    r = overlap.estimate_overlap(_pair, _fit, [1.0], (0.9,), 3, mode=overlap.MOMENT_MATCHED)
    pkunit.pkeq(2, r.rows[0].replicates)
