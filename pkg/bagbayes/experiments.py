# -*- coding: utf-8 -*-
u"""Replicate-pair experiments comparing standard & bagged posteriors

Every replicate r draws its dataset pair, bootstrap streams and held-out test
outcomes from ``SeedPath(root_seed, (r, tag, ...))``; the test regressors come
from ``(STREAM_TEST_POINTS,)`` and are shared by all replicates. Both arms of
a replicate see the same data, so the MLPD differences are paired.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from bagbayes import bagging, constants, distributions, errors, models, overlap, parallel, randstream, simgen
from pykern.pkcollections import PKDict
from pykern.pkdebug import pkdc, pkdlog
import dataclasses
import itertools
import numpy as np
import pandas

NIG_REGRESSION = 'nig_regression'
FLAT_LINREG = 'flat_linreg'
MODEL_KINDS = (NIG_REGRESSION, FLAT_LINREG)

METHODS = (overlap.STANDARD, overlap.BAGGED)
RESULT_COLUMNS = ('direction_id', 'level', 'method', 'overlap_prob', 'bound', 'replicates', 'violated')


@dataclasses.dataclass(frozen=True)
class ExperimentSpec:
    """One overlap experiment

    Args:
      * dgp: :class:`simgen.DGPConfig`
      * model: ``nig_regression`` or ``flat_linreg`` (plug-in residual variance)
      * model_params: a0, b0, lam for ``nig_regression``
      * m: bootstrap size, None for M = N
      * b: bootstrap datasets per bagged posterior
      * r: replicate pairs
      * levels: credible levels 1 - alpha
      * test_point_count: held-out test regressors
      * root_seed: root of every substream
      * parallelism: replicate workers
    """

    dgp: simgen.DGPConfig
    model: str = NIG_REGRESSION
    model_params: tuple = ()
    m: int = None
    b: int = constants.DESK_SCALE['b']
    r: int = constants.DESK_SCALE['r']
    levels: tuple = constants.DEFAULT_LEVELS
    test_point_count: int = constants.DEFAULT_TEST_POINTS
    root_seed: int = 0
    parallelism: int = None

    def __post_init__(self):
        if self.model not in MODEL_KINDS:
            raise errors.InvalidArgument(f'model={self.model} not one of {MODEL_KINDS}')
        if self.model == FLAT_LINREG and self.dgp.n <= self.dgp.d:
            raise errors.InvalidArgument(f'flat_linreg needs n={self.dgp.n} > d={self.dgp.d}')
        if self.r < 1 or self.b < 1 or self.test_point_count < 1:
            raise errors.InvalidArgument(f'r={self.r}, b={self.b}, test_point_count={self.test_point_count} must be >= 1')
        if self.m is not None and self.m < 1:
            raise errors.InvalidArgument(f'm={self.m} must be >= 1')
        object.__setattr__(self, 'levels', tuple(float(l) for l in self.levels))
        if not self.levels or not all(0 < l < 1 for l in self.levels):
            raise errors.InvalidArgument(f'levels={self.levels} must lie in (0, 1)')
        object.__setattr__(self, 'model_params', tuple(sorted(dict(self.model_params).items())))
        # model construction errors surface before any replicate runs
        self.model_for(None)

    def model_for(self, data):
        if self.model == NIG_REGRESSION:
            return models.NIGRegressionModel(**dict(self.model_params))
        return None if data is None else models.FlatLinRegModel(models.residual_variance(data))


class ExperimentResult:
    """Overlap reports, violation fractions & MLPD comparison of one experiment"""

    def __init__(self, spec, reports, moment_matched, mlpd, mlpd_diffs, excluded):
        self.spec = spec
        self.overlap_reports = reports
        self.moment_matched_report = moment_matched
        self.mlpd = mlpd
        self.mlpd_diffs = mlpd_diffs
        self.mlpd_diff_ci = paired_t_interval(mlpd_diffs, constants.MLPD_CONFIDENCE) \
            if len(mlpd_diffs) >= 2 else None
        self.excluded = excluded

    def violation_fractions(self, method):
        r = self.overlap_reports[method]
        return PKDict({str(l): r.violation_fraction(l) for l in self.spec.levels})

    def to_frame(self):
        f = []
        for m in METHODS:
            x = self.overlap_reports[m].to_frame()
            x.insert(2, 'method', m)
            f.append(x)
        return pandas.concat(f, ignore_index=True)[list(RESULT_COLUMNS)]

    def summary(self):
        return PKDict(
            replicates=len(self.mlpd_diffs),
            excluded=self.excluded,
            violation_fractions=PKDict({m: self.violation_fractions(m) for m in METHODS}),
            violation_fractions_moment_matched=PKDict(
                {str(l): self.moment_matched_report.violation_fraction(l) for l in self.spec.levels},
            ),
            mlpd=PKDict(self.mlpd),
            mlpd_diff_ci=None if self.mlpd_diff_ci is None else list(self.mlpd_diff_ci),
            mlpd_confidence=constants.MLPD_CONFIDENCE,
        )


def paired_t_interval(differences, confidence=constants.MLPD_CONFIDENCE):
    """mean +/- t_{n-1, (1+confidence)/2} sd / sqrt(n)"""
    d = np.asarray(differences, dtype=float)
    if len(d) < 2:
        raise errors.InsufficientData(f'paired t interval needs at least 2 differences, got {len(d)}')
    if not 0 < confidence < 1:
        raise errors.InvalidArgument(f'confidence={confidence} not in (0, 1)')
    h = float(distributions.std_ppf((1 + confidence) / 2, len(d) - 1)) * d.std(ddof=1) / np.sqrt(len(d))
    c = float(d.mean())
    return c - h, c + h


def _indicators(posteriors, u, levels, mode):
    res = []
    for l in levels:
        a, b = [overlap.interval_arrays(p, u, 1 - l, mode) for p in posteriors]
        res.append(np.maximum(a[0], b[0]) <= np.minimum(a[1], b[1]))
    return np.array(res)


def _report(indicators, levels):
    p = np.mean(indicators, axis=0)
    return overlap.OverlapReport(
        [
            PKDict(direction_id=k, level=l, overlap_prob=float(p[j, k]), replicates=len(indicators))
            for j, l in enumerate(levels)
            for k in range(p.shape[1])
        ],
    )


def run_overlap_experiment(spec):
    """Estimate overlap of standard & bagged intervals for u = each test regressor

    Returns:
      * :class:`ExperimentResult`
    """
    root = randstream.SeedPath(spec.root_seed)
    u = simgen.gen_test_points(spec.dgp, spec.test_point_count, root.child(constants.STREAM_TEST_POINTS))

    def _replicate(i):
        s = root.child(i)
        fits = []
        try:
            for k in range(2):
                d = simgen.gen_dataset(spec.dgp, s.child(constants.STREAM_DATA, k))
                m = spec.model_for(d)
                fits.append(
                    (
                        m.posterior(d),
                        bagging.bag_monte_carlo(
                            m, d, spec.m, spec.b, s.child(constants.STREAM_BOOTSTRAP, k), parallelism=1,
                        ),
                    ),
                )
            res = PKDict(
                standard=_indicators([f[0] for f in fits], u, spec.levels, None),
                bagged=_indicators([f[1] for f in fits], u, spec.levels, overlap.MIXTURE_QUANTILE),
                moment_matched=_indicators([f[1] for f in fits], u, spec.levels, overlap.MOMENT_MATCHED),
            )
        except (errors.FitFailure, errors.AllComponentsFailed) as e:
            pkdlog('replicate={} excluded: {}', i, e)
            return None
        y = simgen.gen_outcomes(spec.dgp, u, s.child(constants.STREAM_TEST_OUTCOMES))
        std, bag = fits[0]
        res.mlpd = PKDict(
            standard=float(np.mean(std.log_predictive(u, y))),
            bagged=float(np.mean(bagging.bagged_predictive_log_density(bag, u, y))),
        )
        pkdc('replicate={} mlpd={}', i, res.mlpd)
        return res

    res = [x for x in parallel.map_ordered(_replicate, range(spec.r), spec.parallelism) if x is not None]
    if not res:
        raise errors.AllReplicatesFailed(f'all {spec.r} replicates failed to fit')
    if len(res) < spec.r:
        pkdlog('excluded {} of {} replicates', spec.r - len(res), spec.r)
    return ExperimentResult(
        spec=spec,
        reports=PKDict({m: _report([x[m] for x in res], spec.levels) for m in METHODS}),
        moment_matched=_report([x.moment_matched for x in res], spec.levels),
        mlpd=PKDict({m: float(np.mean([x.mlpd[m] for x in res])) for m in METHODS}),
        mlpd_diffs=[x.mlpd.bagged - x.mlpd.standard for x in res],
        excluded=spec.r - len(res),
    )


def _unit(d, u):
    if u is None:
        u = np.zeros(d)
        u[0] = 1.0
    return models._direction(u, d)


def location_pairs_experiment(scenario, n, num_datasets, alpha, root, m=None, b=constants.DEFAULT_B,
                              v0_inv=None, parallelism=None):
    """Standard & bagged intervals on several location datasets & their pairwise overlaps

    Returns:
      * PKDict(datasets, pairs, overlap_rate, true_mean)
    """
    if num_datasets < 2:
        raise errors.InvalidArgument(f'num_datasets={num_datasets} must be >= 2')
    model = scenario.model(v0_inv)
    u = _unit(scenario.d, None)

    def _fit(i):
        d = simgen.gen_location_data(scenario, n, root.child(i, constants.STREAM_DATA))
        return model.posterior(d), bagging.bag_monte_carlo(
            model, d, m, b, root.child(i, constants.STREAM_BOOTSTRAP), parallelism=1,
        )

    fits = parallel.map_ordered(_fit, range(num_datasets), parallelism)
    t = float(u @ scenario.mean)
    ds = []
    for i, (s, g) in enumerate(fits):
        si = overlap.central_interval(s.functional(u), alpha)
        bi = overlap.bagged_interval(g, u, alpha, overlap.MIXTURE_QUANTILE)
        bm = bagging.bagged_moments(g)
        ds.append(
            PKDict(
                dataset=i,
                standard_mean=float(u @ s.mean),
                standard_sd=float(np.sqrt(u @ s.cov @ u)),
                standard_lower=si.lower,
                standard_upper=si.upper,
                bagged_mean=float(u @ bm.mean),
                bagged_sd=float(np.sqrt(u @ bm.cov @ u)),
                bagged_lower=bi.lower,
                bagged_upper=bi.upper,
                standard_covers=si.lower <= t <= si.upper,
                bagged_covers=bi.lower <= t <= bi.upper,
                _intervals=(si, bi),
            ),
        )
    pairs = [
        PKDict(
            i=i,
            j=j,
            standard=overlap.intervals_overlap(ds[i]._intervals[0], ds[j]._intervals[0]),
            bagged=overlap.intervals_overlap(ds[i]._intervals[1], ds[j]._intervals[1]),
        )
        for i, j in itertools.combinations(range(num_datasets), 2)
    ]
    for d in ds:
        d.pop('_intervals')
    return PKDict(
        datasets=ds,
        pairs=pairs,
        overlap_rate=PKDict({k: float(np.mean([p[k] for p in pairs])) for k in METHODS}),
        true_mean=t,
    )


def location_overlap_study(scenario, n, r, alpha, root, m=None, b=constants.DEFAULT_B,
                           prior_precision=None, u=None, parallelism=None):
    """Empirical overlap of the Gaussian location model over r independent dataset pairs

    Reports the large-sample formula next to each estimate; with V = I & a
    flat prior the exact finite-sample standard value & bagged t lower bound
    are reported as well.

    Returns:
      * PKDict(empirical, se, formula, finite_sample, r)
    """
    if r < 1:
        raise errors.InvalidArgument(f'r={r} must be >= 1')
    model = scenario.model(prior_precision)
    u = _unit(scenario.d, u)
    m = n if m is None else int(m)

    def _pair(i):
        return [
            simgen.gen_location_data(scenario, n, root.child(i, constants.STREAM_DATA, k))
            for k in range(2)
        ]

    def _replicate(i):
        p = _pair(i)
        s = [model.posterior(d) for d in p]
        g = [
            bagging.bag_monte_carlo(model, d, m, b, root.child(i, constants.STREAM_BOOTSTRAP, k), parallelism=1)
            for k, d in enumerate(p)
        ]
        return (
            overlap.intervals_overlap(*[overlap.central_interval(x.functional(u), alpha) for x in s]),
            overlap.intervals_overlap(*[overlap.bagged_interval(x, u, alpha) for x in g]),
        )

    x = np.array(parallel.map_ordered(_replicate, range(r), parallelism), dtype=float)
    e = x.mean(axis=0)
    res = PKDict(
        empirical=PKDict(standard=float(e[0]), bagged=float(e[1])),
        se=PKDict(standard=float(np.sqrt(e[0] * (1 - e[0]) / r)), bagged=float(np.sqrt(e[1] * (1 - e[1]) / r))),
        formula=PKDict(
            standard=overlap.asymptotic_overlap_location(scenario.v, scenario.cov, u, alpha),
            bagged=overlap.asymptotic_overlap_location(scenario.v, scenario.cov, u, alpha, c=m / n, which=overlap.BAGGED),
        ),
        r=r,
    )
    if np.allclose(scenario.v, np.eye(scenario.d)) and not np.any(model.v0_inv):
        w = u / np.linalg.norm(u)
        res.finite_sample = PKDict(
            standard=overlap.growing_dim_overlap(float(w @ scenario.cov @ w), alpha),
            bagged_lower_bound=overlap.growing_dim_overlap(None, alpha, n=n, m=m, which='bagged-lower-bound'),
        )
    return res


def prior_expected_overlap(model, n, draws, alpha, root, u=None):
    """Overlap frequency of standard intervals when theta is drawn from the prior

    Each draw generates two correctly specified datasets given theta.

    Returns:
      * PKDict(overlap_rate, se, draws, bound)
    """
    if draws < 1:
        raise errors.InvalidArgument(f'draws={draws} must be >= 1')
    try:
        v0 = models._inverse(models.cholesky(model.v0_inv, 'prior precision'))
    except errors.RankDeficiency:
        raise errors.InvalidArgument('prior expected overlap needs a proper prior (V0^-1 positive definite)')
    u = _unit(model.d, u)
    hits = 0
    for i in range(draws):
        g = root.child(i, constants.STREAM_PRIOR).generator()
        theta = g.multivariate_normal(np.zeros(model.d), v0, method='eigh')
        iv = []
        for k in range(2):
            x = root.child(i, constants.STREAM_DATA, k).generator().multivariate_normal(
                theta, model.v, size=n, method='eigh',
            )
            iv.append(overlap.central_interval(model.posterior(models.LocationData(x)).functional(u), alpha))
        hits += overlap.intervals_overlap(*iv)
    p = hits / draws
    return PKDict(
        overlap_rate=p,
        se=float(np.sqrt(p * (1 - p) / draws)),
        draws=draws,
        bound=overlap.overlap_bound(alpha, alpha),
    )


def histogram_counts(report, bins=10):
    """Counts of estimated overlap probabilities in equal-width bins over [0, 1], per level"""
    if bins < 1:
        raise errors.InvalidArgument(f'bins={bins} must be >= 1')
    e = np.linspace(0, 1, bins + 1)
    rows = []
    for l in sorted({r.level for r in report.rows}):
        c, _ = np.histogram(report.probabilities(l), bins=e)
        rows.extend([l, e[k], e[k + 1], int(c[k])] for k in range(bins))
    return pandas.DataFrame(rows, columns=['level', 'bin_lower', 'bin_upper', 'count'])
