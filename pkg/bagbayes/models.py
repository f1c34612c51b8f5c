"""models.py

Datasets, exact conjugate posteriors, and the three model families with
closed-form posteriors: the Gaussian location model, normal-inverse-gamma
linear regression, and flat-prior linear regression with fixed variance

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
import scipy.linalg

from bagbayes import constants, distributions, errors


def cholesky(a, what):
    """Lower Cholesky factor of a symmetric positive-definite matrix

    Args:
      * a: (D, D) matrix
      * what: name used in the error message

    Returns:
      * factor usable by :func:`scipy.linalg.cho_solve`

    Raises:
      * errors.RankDeficiency if a pivot is below PIVOT_TOL times the largest
    """

    a = np.asarray(a, dtype=float)
    try:
        c = scipy.linalg.cho_factor(a, lower=True, check_finite=False)
    except np.linalg.LinAlgError:
        raise errors.RankDeficiency(what, np.linalg.cond(a))
    pivots = np.diag(c[0]) ** 2
    if not np.all(np.isfinite(pivots)) or pivots.min() < constants.PIVOT_TOL * pivots.max():
        raise errors.RankDeficiency(what, np.linalg.cond(a))
    return c


def _inverse(chol):
    i = scipy.linalg.cho_solve(chol, np.eye(len(chol[0])))
    return (i + i.T) / 2


def _direction(u, d):
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if u.shape != (d,):
        raise errors.InvalidArgument(f"direction has shape={u.shape}, expected ({d},)")
    if not np.any(u):
        raise errors.InvalidArgument("direction must be nonzero")
    return u


def _directions(U, d):
    U = np.atleast_2d(np.asarray(U, dtype=float))
    if U.shape[1] != d:
        raise errors.InvalidArgument(f"directions have dimension={U.shape[1]}, expected {d}")
    if not np.all(np.any(U, axis=1)):
        raise errors.InvalidArgument("directions must be nonzero")
    return U


class Dataset:
    """Base class for datasets with N rows"""

    kind = None

    @property
    def n(self):
        raise NotImplementedError("This is a virtual method. Stop.")

    @property
    def d(self):
        raise NotImplementedError("This is a virtual method. Stop.")

    def repeat_rows(self, counts):
        """VIRTUAL: dataset with row i repeated counts[i] times"""

        raise NotImplementedError("This is a virtual method. Stop.")


def _check_finite(name, a):
    if not np.all(np.isfinite(a)):
        raise errors.InvalidArgument(f"{name} has non-finite entries")


class LocationData(Dataset):
    """Observations x_{1:N} as an (N, D) matrix"""

    kind = "location"

    def __init__(self, x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if x.ndim != 2 or x.shape[0] < 1:
            raise errors.InvalidArgument(f"location data must be (N, D) with N >= 1, got shape={x.shape}")
        _check_finite("x", x)
        self.x = x

    @property
    def n(self):
        return self.x.shape[0]

    @property
    def d(self):
        return self.x.shape[1]

    def repeat_rows(self, counts):
        return LocationData(np.repeat(self.x, counts, axis=0))


class RegressionData(Dataset):
    """Regressors Z (N, D) & outcomes y (N,)"""

    kind = "regression"

    def __init__(self, z, y):
        z = np.asarray(z, dtype=float)
        y = np.asarray(y, dtype=float)
        if z.ndim == 1:
            z = z[:, None]
        if z.ndim != 2 or z.shape[0] < 1 or y.shape != (z.shape[0],):
            raise errors.InvalidArgument(
                f"regression data needs Z (N, D) & y (N,) with N >= 1, got {z.shape} & {y.shape}",
            )
        _check_finite("Z", z)
        _check_finite("y", y)
        self.z = z
        self.y = y

    @property
    def n(self):
        return self.z.shape[0]

    @property
    def d(self):
        return self.z.shape[1]

    def repeat_rows(self, counts):
        return RegressionData(np.repeat(self.z, counts, axis=0), np.repeat(self.y, counts))


class GaussianPosterior:
    """Multivariate normal posterior N(mean, cov)

    A one-dimensional instance doubles as the scalar posterior of u^T theta.
    """

    kind = "gaussian"
    dof = None

    def __init__(self, mean, cov):
        mean = np.atleast_1d(np.asarray(mean, dtype=float))
        cov = np.atleast_2d(np.asarray(cov, dtype=float))
        if cov.shape != (len(mean), len(mean)):
            raise errors.InvalidArgument(f"cov shape={cov.shape} does not match mean length={len(mean)}")
        t = np.trace(cov)
        if np.max(np.abs(cov - cov.T), initial=0) > constants.SYMMETRY_TOL * max(abs(t), 1e-300):
            raise errors.InvalidArgument("posterior covariance is not symmetric")
        if len(mean) > 1 and np.linalg.eigvalsh(cov).min() < -constants.SYMMETRY_TOL * t:
            raise errors.InvalidArgument("posterior covariance is not positive semidefinite")
        if len(mean) == 1 and cov[0, 0] < 0:
            raise errors.InvalidArgument("posterior variance is negative")
        self.mean = mean
        self.cov = (cov + cov.T) / 2

    @property
    def d(self):
        return len(self.mean)

    @property
    def center(self):
        return float(self.mean[0])

    @property
    def scale(self):
        return float(np.sqrt(self.cov[0, 0]))

    def functional(self, u):
        """Scalar posterior of u^T theta"""

        u = _direction(u, self.d)
        return GaussianPosterior([u @ self.mean], [[u @ self.cov @ u]])

    def functional_arrays(self, U):
        """Centers, scales & dof of u^T theta for each row u of U"""

        U = _directions(U, self.d)
        return U @ self.mean, np.sqrt(np.einsum("ij,jk,ik->i", U, self.cov, U)), None

    def to_json(self):
        return {"kind": self.kind, "mean": self.mean.tolist(), "cov": self.cov.tolist()}


class StudentScalarPosterior:
    """Location-scale Student-t posterior of a scalar functional"""

    kind = "student"

    def __init__(self, center, scale, dof):
        if not scale > 0 or not dof > 0:
            raise errors.InvalidArgument(f"scale={scale} & dof={dof} must be positive")
        self.center = float(center)
        self.scale = float(scale)
        self.dof = float(dof)

    @property
    def d(self):
        return 1

    @property
    def mean(self):
        return np.array([self.center])

    @property
    def cov(self):
        return np.array([[self.scale**2 * distributions.std_variance(self.dof)]])

    def functional(self, u):
        u = _direction(u, 1)
        return StudentScalarPosterior(u[0] * self.center, abs(u[0]) * self.scale, self.dof)

    def functional_arrays(self, U):
        U = _directions(U, 1)[:, 0]
        return U * self.center, np.abs(U) * self.scale, self.dof

    def to_json(self):
        return {"kind": self.kind, "center": self.center, "scale": self.scale, "dof": self.dof}


class NIGPosterior:
    """Normal-inverse-gamma posterior of (beta, sigma^2)

    beta | sigma^2 ~ N(mu, sigma^2 precision^-1) and sigma^2 ~ InvGam(a, b)
    """

    kind = "nig"

    def __init__(self, mu, precision, a, b):
        self.mu = np.asarray(mu, dtype=float)
        self.precision = np.asarray(precision, dtype=float)
        self.a = float(a)
        self.b = float(b)
        self._chol = cholesky(self.precision, "posterior precision")

    @property
    def d(self):
        return len(self.mu)

    @property
    def mean(self):
        return self.mu

    @property
    def cov(self):
        """Marginal covariance of beta, b/(a-1) precision^-1 (requires a > 1)"""

        if self.a <= 1:
            raise errors.NumericalDegeneracy(f"marginal covariance undefined for a={self.a} <= 1")
        return self.b / (self.a - 1) * _inverse(self._chol)

    @property
    def chol_factor(self):
        """Lower Cholesky factor L of precision = L L^T (upper triangle unused)"""

        return self._chol[0]

    @property
    def sigma2_marginal(self):
        return self.a, self.b

    def beta_given_sigma2(self, sigma2):
        """Conditional Gaussian posterior of beta for a given sigma^2"""

        return GaussianPosterior(self.mu, sigma2 * _inverse(self._chol))

    def functional(self, u):
        return nig_marginal_functional(self, u)

    def functional_arrays(self, U):
        U = _directions(U, self.d)
        q = np.sum(U.T * scipy.linalg.cho_solve(self._chol, U.T), axis=0)
        return U @ self.mu, np.sqrt(self.b / self.a * q), 2 * self.a

    def log_predictive(self, z, y):
        """Student-t posterior predictive log density of each (z_i, y_i)"""

        z = _directions(z, self.d)
        c, s, dof = self.functional_arrays(z)
        s = np.sqrt(s**2 + self.b / self.a)
        return distributions.std_logpdf((np.asarray(y, dtype=float) - c) / s, dof) - np.log(s)

    def to_json(self):
        return {
            "kind": self.kind, "mu": self.mu.tolist(), "precision": self.precision.tolist(),
            "a": self.a, "b": self.b,
        }


class FlatLinRegPosterior:
    """Gaussian posterior of beta under a flat prior with fixed sigma^2"""

    kind = "flat_linreg"

    def __init__(self, beta_hat, gram, sigma2):
        self.beta_hat = np.asarray(beta_hat, dtype=float)
        self.gram = np.asarray(gram, dtype=float)
        self.sigma2 = float(sigma2)
        self._chol = cholesky(self.gram, "Z^T Z")

    @property
    def d(self):
        return len(self.beta_hat)

    @property
    def mean(self):
        return self.beta_hat

    @property
    def cov(self):
        return self.sigma2 * _inverse(self._chol)

    def functional(self, u):
        u = _direction(u, self.d)
        return GaussianPosterior([u @ self.beta_hat], [[self.sigma2 * u @ scipy.linalg.cho_solve(self._chol, u)]])

    def functional_arrays(self, U):
        U = _directions(U, self.d)
        q = np.sum(U.T * scipy.linalg.cho_solve(self._chol, U.T), axis=0)
        return U @ self.beta_hat, np.sqrt(self.sigma2 * q), None

    def log_predictive(self, z, y):
        """Gaussian posterior predictive log density with the plug-in sigma^2"""

        c, s, _ = self.functional_arrays(z)
        s = np.sqrt(s**2 + self.sigma2)
        return distributions.std_logpdf((np.asarray(y, dtype=float) - c) / s) - np.log(s)

    def to_json(self):
        return {
            "kind": self.kind, "beta_hat": self.beta_hat.tolist(), "gram": self.gram.tolist(),
            "sigma2": self.sigma2,
        }


_POSTERIORS = {
    "gaussian": lambda v: GaussianPosterior(v["mean"], v["cov"]),
    "student": lambda v: StudentScalarPosterior(v["center"], v["scale"], v["dof"]),
    "nig": lambda v: NIGPosterior(v["mu"], v["precision"], v["a"], v["b"]),
    "flat_linreg": lambda v: FlatLinRegPosterior(v["beta_hat"], v["gram"], v["sigma2"]),
}


def posterior_from_json(value):
    """Inverse of the posteriors' to_json"""

    try:
        return _POSTERIORS[value["kind"]](value)
    except KeyError as e:
        raise errors.InvalidArgument(f"unknown or incomplete posterior record: {e}")


class ConjugateModel:
    """Base class for models with closed-form posteriors"""

    data_kind = None

    def posterior(self, data):
        """VIRTUAL: exact posterior given a dataset"""

        raise NotImplementedError("This is a virtual method. Stop.")

    def log_posterior(self, data):
        """VIRTUAL: unnormalized log posterior density as a function of parameters"""

        raise NotImplementedError("This is a virtual method. Stop.")

    def to_json(self):
        raise NotImplementedError("This is a virtual method. Stop.")

    def _check_data(self, data):
        if data.kind != self.data_kind:
            raise errors.InvalidArgument(f"{type(self).__name__} needs {self.data_kind} data, got {data.kind}")


class GaussianLocationModel(ConjugateModel):
    """x_n ~ iid N(theta, V) with prior theta ~ N(0, V0)

    Args:
      * v: (D, D) positive-definite model covariance
      * v0_inv: (D, D) positive-semidefinite prior precision (default 0, flat prior)
    """

    data_kind = "location"

    def __init__(self, v, v0_inv=None):
        v = np.atleast_2d(np.asarray(v, dtype=float))
        if v.shape[0] != v.shape[1] or np.max(np.abs(v - v.T)) > constants.SYMMETRY_TOL * abs(np.trace(v)):
            raise errors.ModelConstructionError("V must be a symmetric square matrix")
        try:
            self._v_chol = cholesky(v, "V")
        except errors.RankDeficiency as e:
            raise errors.ModelConstructionError(f"V is not positive definite: {e}")
        self.v = v
        self.v_inv = _inverse(self._v_chol)
        if v0_inv is None:
            v0_inv = np.zeros_like(v)
        v0_inv = np.atleast_2d(np.asarray(v0_inv, dtype=float))
        if v0_inv.shape != v.shape or np.max(np.abs(v0_inv - v0_inv.T)) > constants.SYMMETRY_TOL * max(abs(np.trace(v0_inv)), 1):
            raise errors.ModelConstructionError("V0_inv must be symmetric with the shape of V")
        if np.linalg.eigvalsh(v0_inv).min() < -constants.SYMMETRY_TOL * max(np.trace(v0_inv), 1):
            raise errors.ModelConstructionError("V0_inv must be positive semidefinite")
        self.v0_inv = v0_inv

    @property
    def d(self):
        return self.v.shape[0]

    def shrinkage(self, n):
        """R_n = (V V0^-1 / n + I)^-1, so the posterior mean is R_n xbar_n

        Equal to (V0^-1 V / n + I)^-1 when V & V0^-1 commute.
        """

        return np.linalg.solve(self.v @ self.v0_inv / n + np.eye(self.d), np.eye(self.d))

    def posterior_covariance(self, n):
        """V_n = (V0^-1 + n V^-1)^-1"""

        return _inverse(cholesky(self.v0_inv + n * self.v_inv, "posterior precision"))

    def posterior(self, data):
        return gaussian_location_posterior(self, data)

    def log_posterior(self, data):
        self._check_data(data)
        xbar = data.x.mean(axis=0)
        n = data.n

        def _log_density(theta):
            t = np.atleast_2d(theta)
            dev = t - xbar
            r = -0.5 * (
                n * np.einsum("ij,jk,ik->i", dev, self.v_inv, dev)
                + np.einsum("ij,jk,ik->i", t, self.v0_inv, t)
            )
            return r if np.ndim(theta) > 1 else r[0]

        return _log_density

    def to_json(self):
        return {"kind": "gaussian_location", "v": self.v.tolist(), "v0_inv": self.v0_inv.tolist()}


class NIGRegressionModel(ConjugateModel):
    """sigma^2 ~ InvGam(a0, b0), beta_d | sigma^2 ~ iid N(0, sigma^2/lam), y ~ N(Z beta, sigma^2 I)"""

    data_kind = "regression"

    def __init__(self, a0=2.0, b0=1.0, lam=1.0):
        if not (a0 > 0 and b0 > 0 and lam > 0):
            raise errors.ModelConstructionError(f"a0={a0}, b0={b0}, lam={lam} must all be positive")
        self.a0 = float(a0)
        self.b0 = float(b0)
        self.lam = float(lam)

    def posterior(self, data):
        return nig_regression_posterior(self, data)

    def log_posterior(self, data):
        """Joint log density of theta = (beta, sigma^2)"""

        self._check_data(data)

        def _log_density(theta):
            t = np.atleast_2d(theta)
            beta, s2 = t[:, :-1], t[:, -1]
            with np.errstate(divide="ignore", invalid="ignore"):
                rss = np.sum((data.y[None, :] - beta @ data.z.T) ** 2, axis=1)
                r = (
                    -(self.a0 + 1 + (data.d + data.n) / 2) * np.log(s2)
                    - (self.b0 + (self.lam * np.sum(beta**2, axis=1) + rss) / 2) / s2
                )
            r = np.where(s2 > 0, r, -np.inf)
            return r if np.ndim(theta) > 1 else r[0]

        return _log_density

    def to_json(self):
        return {"kind": "nig_regression", "a0": self.a0, "b0": self.b0, "lam": self.lam}


class FlatLinRegModel(ConjugateModel):
    """y ~ N(Z beta, sigma2 I) with a flat prior on beta & fixed sigma2"""

    data_kind = "regression"

    def __init__(self, sigma2):
        if not sigma2 > 0:
            raise errors.ModelConstructionError(f"sigma2={sigma2} must be positive")
        self.sigma2 = float(sigma2)

    def posterior(self, data):
        self._check_data(data)
        g = data.z.T @ data.z
        c = cholesky(g, "Z^T Z")
        return FlatLinRegPosterior(scipy.linalg.cho_solve(c, data.z.T @ data.y), g, self.sigma2)

    def log_posterior(self, data):
        self._check_data(data)

        def _log_density(theta):
            t = np.atleast_2d(theta)
            r = -np.sum((data.y[None, :] - t @ data.z.T) ** 2, axis=1) / (2 * self.sigma2)
            return r if np.ndim(theta) > 1 else r[0]

        return _log_density

    def to_json(self):
        return {"kind": "flat_linreg", "sigma2": self.sigma2}


_MODELS = {
    "gaussian_location": lambda v: GaussianLocationModel(v["v"], v.get("v0_inv")),
    "nig_regression": lambda v: NIGRegressionModel(v.get("a0", 2.0), v.get("b0", 1.0), v.get("lam", 1.0)),
    "flat_linreg": lambda v: FlatLinRegModel(v["sigma2"]),
}


def model_from_json(value):
    """Inverse of the models' to_json"""

    try:
        return _MODELS[value["kind"]](value)
    except KeyError as e:
        raise errors.InvalidArgument(f"unknown or incomplete model record: {e}")


def gaussian_location_posterior(model, data):
    """theta | x ~ N(R_N xbar_N, V_N)"""

    model._check_data(data)
    if data.d != model.d:
        raise errors.InvalidArgument(f"data dimension={data.d} does not match V dimension={model.d}")
    p = cholesky(model.v0_inv + data.n * model.v_inv, "posterior precision")
    # V_N N V^-1 == R_N
    return GaussianPosterior(
        scipy.linalg.cho_solve(p, data.n * model.v_inv @ data.x.mean(axis=0)),
        _inverse(p),
    )


def nig_regression_posterior(model, data):
    """Normal-inverse-gamma conjugate update

    precision = lam I + Z^T Z, mu = precision^-1 Z^T y, a = a0 + N/2,
    b = b0 + (y^T y - mu^T precision mu)/2; b is accumulated as
    b0 + (|y - Z mu|^2 + lam |mu|^2)/2, which is algebraically equal and
    free of cancellation.
    """

    model._check_data(data)
    p = model.lam * np.eye(data.d) + data.z.T @ data.z
    mu = scipy.linalg.cho_solve(cholesky(p, "posterior precision"), data.z.T @ data.y)
    r = data.y - data.z @ mu
    b = model.b0 + (r @ r + model.lam * mu @ mu) / 2
    if not b > 0:
        raise errors.NumericalDegeneracy(f"inverse-gamma scale b_N={b} is not positive")
    return NIGPosterior(mu, p, model.a0 + data.n / 2, b)


def nig_marginal_functional(posterior, u):
    """u^T beta | data ~ t_{2a}(u^T mu, sqrt((b/a) u^T precision^-1 u))"""

    u = _direction(u, posterior.d)
    c, s, dof = posterior.functional_arrays(u[None, :])
    return StudentScalarPosterior(c[0], s[0], dof)


def flat_linreg_functional(model, data, u):
    """u^T beta | Z, y ~ N(v^T y, sigma^2 |v|^2) with v = Z (Z^T Z)^-1 u"""

    return model.posterior(data).functional(u)


def residual_variance(data):
    """Unbiased residual variance RSS / (N - D) of the least-squares fit"""

    if data.n <= data.d:
        raise errors.InsufficientData(f"residual variance needs N={data.n} > D={data.d}")
    beta, _, rank, _ = np.linalg.lstsq(data.z, data.y, rcond=None)
    if rank < data.d:
        raise errors.RankDeficiency("Z", np.linalg.cond(data.z))
    r = data.y - data.z @ beta
    return float(r @ r / (data.n - data.d))
