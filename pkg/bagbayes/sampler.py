# -*- coding: utf-8 -*-
u"""Bagged posterior sampling around any MCMC procedure

:func:`bayesbag_sample` makes one long run on the full data, then for each
bootstrap dataset a short run started at a uniformly chosen long-run draw
with the long run's adapted hyperparameters.

An MCMC procedure is any callable
``mcmc(data, t, theta_init, beta_init, stream) -> (beta, samples)`` with
``samples`` of shape (t, dim), deterministic given ``stream``.

:copyright: Copyright (c) 2026 RadiaSoft LLC.  All Rights Reserved.
:license: http://www.apache.org/licenses/LICENSE-2.0.html
"""
from __future__ import absolute_import, division, print_function
from bagbayes import constants, errors, models, parallel, randstream
from pykern import pkio
from pykern.pkcollections import PKDict
from pykern.pkdebug import pkdc, pkdlog
import dataclasses
import numpy as np
import pandas
import scipy.linalg

#: run_id of the long run in sample exports
LONG_RUN_ID = -1


class MCMCProcedure:
    """Base class for MCMC procedures usable by :func:`bayesbag_sample`"""

    def __call__(self, data, t, theta_init, beta_init, stream):
        """VIRTUAL: (adapted hyperparameters, (t, dim) samples)"""
        raise NotImplementedError("This is a virtual method. Stop.")

    def initial_state(self, data):
        """Default start of the long run"""
        return np.zeros(data.d)


class ConjugateSampler(MCMCProcedure):
    """Exact i.i.d. posterior draws of a conjugate model; hyperparameters pass through

    Gaussian posteriors give theta draws. Normal-inverse-gamma posteriors
    give (beta, sigma^2) rows, the same state as :class:`RandomWalkMetropolis`
    samples for that model.
    """

    def __init__(self, model):
        self.model = model

    def __call__(self, data, t, theta_init, beta_init, stream):
        p = self.model.posterior(data)
        if isinstance(p, models.NIGPosterior):
            return beta_init, nig_draws(p, t, stream)
        return beta_init, stream.generator().multivariate_normal(p.mean, p.cov, size=t, method='eigh')


def nig_draws(posterior, t, stream):
    """t exact draws of (beta, sigma^2): sigma^2 ~ InvGam(a, b), beta | sigma^2 ~ N(mu, sigma^2 precision^-1)

    Returns:
      * (t, D + 1) array with sigma^2 in the last column
    """
    rng = stream.generator()
    s2 = 1.0 / rng.gamma(posterior.a, 1.0 / posterior.b, size=t)
    # L^T x = e with precision = L L^T gives x ~ N(0, precision^-1)
    x = scipy.linalg.solve_triangular(
        posterior.chol_factor, rng.standard_normal((posterior.d, t)), lower=True, trans='T',
    )
    return np.column_stack([posterior.mu + (np.sqrt(s2) * x).T, s2])


class RandomWalkMetropolis(MCMCProcedure):
    """:func:`random_walk_metropolis` on a model's log posterior; beta is the proposal sd

    Args:
      * model: provides ``log_posterior(data)``
      * initial: long-run start (default zeros)
    """

    def __init__(self, model, initial=None):
        self.model = model
        self.initial = initial

    def __call__(self, data, t, theta_init, beta_init, stream):
        sd, samples, rate = random_walk_metropolis(
            self.model.log_posterior(data), beta_init, t, theta_init, stream,
        )
        pkdc('stream={} acceptance={} sd={}', stream, rate, sd)
        return sd, samples

    def initial_state(self, data):
        if self.initial is None:
            return super().initial_state(data)
        return np.asarray(self.initial, dtype=float)


@dataclasses.dataclass(frozen=True)
class SamplerOutput:
    """Long-run & bagged draws

    Args:
      * standard_samples: (t, dim)
      * bagged_samples: (b * t_flat, dim), short runs concatenated in run order
      * bagged_run_ids: run index of each bagged row
      * beta: hyperparameters adapted by the long run
      * runs: per short run PKDict(run_id, bootstrap_seed, init_index, theta_init, beta)
    """

    standard_samples: np.ndarray
    bagged_samples: np.ndarray
    bagged_run_ids: np.ndarray
    beta: object
    runs: list

    def metadata(self):
        return PKDict(beta=_jsonable(self.beta), runs=self.runs)


def _jsonable(value):
    return np.asarray(value).tolist() if isinstance(value, (np.ndarray, np.generic)) else value


def random_walk_metropolis(log_density, proposal_sd, t, theta_init, stream):
    """Metropolis with spherical Gaussian proposals

    The log proposal sd follows a Robbins-Monro update toward acceptance
    probability TARGET_ACCEPTANCE during the first t // 2 steps, then stays
    fixed.

    Args:
      * log_density: callable theta -> float, may return -inf
      * proposal_sd: initial proposal sd (> 0)
      * t: number of draws
      * theta_init: starting state
      * stream: :class:`randstream.SeedPath`

    Returns:
      * adapted proposal sd
      * (t, dim) samples
      * acceptance rate after adaptation (nan when t < 2)
    """
    if t < 1:
        raise errors.InvalidArgument(f't={t} must be >= 1')
    if proposal_sd is None or not proposal_sd > 0 or not np.isfinite(proposal_sd):
        raise errors.InvalidArgument(f'proposal_sd={proposal_sd} must be positive and finite')
    theta = np.atleast_1d(np.asarray(theta_init, dtype=float)).copy()
    lp = float(log_density(theta))
    if not np.isfinite(lp):
        raise errors.InvalidStart(f'log density={lp} at theta_init={theta.tolist()}')
    rng = stream.generator()
    steps = rng.standard_normal((t, len(theta)))
    logu = np.log(rng.random(t))
    adapt = t // 2
    log_sd = np.log(proposal_sd)
    out = np.empty((t, len(theta)))
    accepted = 0
    for i in range(t):
        p = theta + np.exp(log_sd) * steps[i]
        lq = float(log_density(p))
        a = min(0.0, lq - lp) if np.isfinite(lq) else -np.inf
        ok = logu[i] < a
        if ok:
            theta, lp = p, lq
        if i < adapt:
            log_sd += (np.exp(a) - constants.TARGET_ACCEPTANCE) / np.sqrt(i + 1)
        else:
            accepted += ok
        out[i] = theta
    return float(np.exp(log_sd)), out, accepted / (t - adapt) if t - adapt > 1 else float('nan')


def _burn(t_flat, discard_fraction):
    return int(round(discard_fraction * t_flat / (1 - discard_fraction)))


def bayesbag_sample(mcmc, data, t, t_flat, m, b, beta_init, root, theta_init=None,
                    discard_fraction=0.0, parallelism=None):
    """Long run on the data, then b short runs on bootstrap datasets

    Short run i draws its bootstrap dataset from ``root.child(i, STREAM_BOOTSTRAP)``,
    its start from ``root.child(i, STREAM_INIT)`` & its chain from
    ``root.child(i, STREAM_CHAIN)``; the long run uses ``root.child(STREAM_CHAIN)``.
    With ``discard_fraction`` f each short run is lengthened so that its
    first fraction f is dropped and t_flat draws remain.

    Args:
      * mcmc: MCMC procedure
      * data: dataset
      * t, t_flat: long & short run lengths
      * m: bootstrap dataset size (None for N)
      * b: number of short runs (>= 0)
      * beta_init: initial hyperparameters of the long run
      * root: :class:`randstream.SeedPath`

    Returns:
      * :class:`SamplerOutput`
    """
    if t < 1 or t_flat < 1 or b < 0:
        raise errors.InvalidArgument(f't={t}, t_flat={t_flat} must be >= 1 and b={b} >= 0')
    if not 0 <= discard_fraction < 1:
        raise errors.InvalidArgument(f'discard_fraction={discard_fraction} not in [0, 1)')
    m = data.n if m is None else int(m)
    if theta_init is None:
        theta_init = mcmc.initial_state(data)
    beta, samples = mcmc(data, t, theta_init, beta_init, root.child(constants.STREAM_CHAIN))
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if samples.shape[0] != t:
        raise errors.ContractError(f'long run returned {samples.shape[0]} samples, expected t={t}')
    burn = _burn(t_flat, discard_fraction)

    def _short(i):
        c = randstream.draw_counts(data.n, m, root.child(i, constants.STREAM_BOOTSTRAP))
        j = int(root.child(i, constants.STREAM_INIT).generator().integers(t))
        _, s = mcmc(
            randstream.resample(data, c), t_flat + burn, samples[j], beta,
            root.child(i, constants.STREAM_CHAIN),
        )
        s = np.atleast_2d(np.asarray(s, dtype=float))
        if s.shape[0] != t_flat + burn:
            raise errors.ContractError(
                f'short run={i} returned {s.shape[0]} samples, expected {t_flat + burn}',
            )
        return s[burn:], PKDict(
            run_id=i,
            bootstrap_seed=root.child(i, constants.STREAM_BOOTSTRAP).to_json(),
            init_index=j,
            theta_init=samples[j].tolist(),
            beta=_jsonable(beta),
        )

    r = parallel.map_ordered(_short, range(b), parallelism)
    pkdlog('long run t={} and {} short runs of t_flat={} (burn={})', t, b, t_flat, burn)
    return SamplerOutput(
        standard_samples=samples,
        bagged_samples=np.concatenate([x[0] for x in r]) if r else np.empty((0, samples.shape[1])),
        bagged_run_ids=np.repeat(np.arange(b), t_flat),
        beta=beta,
        runs=[x[1] for x in r],
    )


def write_samples_csv(output, path):
    """One row per draw: run_id (LONG_RUN_ID for the long run), theta_0, ..."""
    d = output.standard_samples.shape[1]
    f = pandas.DataFrame(
        np.concatenate([output.standard_samples, output.bagged_samples]),
        columns=[f'theta_{i}' for i in range(d)],
    )
    f.insert(
        0,
        'run_id',
        np.concatenate([np.full(len(output.standard_samples), LONG_RUN_ID), output.bagged_run_ids]),
    )
    p = pkio.py_path(path)
    pkio.mkdir_parent(p.dirpath())
    f.to_csv(str(p), index=False)
    pkdlog('wrote {}', p)
    return p
