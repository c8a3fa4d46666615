"""Second-order inertial dynamics with Hessian damping and Tikhonov term.

The governed system is

    x'' + (alpha/t) x' + beta * hess g(x) x' + grad g(x) + eps(t) x = 0,
    x(t0) = u0,  x'(t0) = v0,

integrated through its Hessian-free lifted form in (x, y), y = x' + beta*grad g(x):

    x' = y - beta * grad g(x)
    y' = -(alpha/t) y - (1 - alpha*beta/t) grad g(x) - eps(t) x.

`integrate` uses the lifted form; `integrate_direct` integrates the original
second-order system in (x, x') via Hessian-vector products and serves as a
cross-validation oracle. Running integrals needed by the ergodic diagnostics
are accumulated as extra state components, not by post-hoc quadrature.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .integrator import IntegrationError, solve
from .problems import ObjectiveSpec, _as_vector
from .schedules import TikhonovSchedule

__all__ = [
    "DynamicsConfig",
    "LiftedState",
    "Trajectory",
    "TrajectorySample",
    "IntegrationError",
    "lift_initial_conditions",
    "recover_velocity",
    "vector_field",
    "integrate",
    "integrate_direct",
    "sample_times",
]


@dataclass(frozen=True, eq=False)
class DynamicsConfig:
    """Run parameters: damping coefficients, initial data, horizon, tolerances."""

    alpha: float
    beta: float
    t0: float
    u0: np.ndarray
    v0: np.ndarray
    horizon: float
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    sample_count: int = 400
    sample_spacing: str = "logarithmic"

    def __post_init__(self):
        object.__setattr__(self, "u0", np.atleast_1d(np.asarray(self.u0, dtype=float)))
        object.__setattr__(self, "v0", np.atleast_1d(np.asarray(self.v0, dtype=float)))
        if self.alpha < 0.0:
            raise ValueError("alpha must be nonnegative")
        if self.beta < 0.0:
            raise ValueError("beta must be nonnegative")
        if self.t0 <= 0.0:
            raise ValueError("t0 must be strictly positive")
        if self.horizon < self.t0:
            raise ValueError("horizon must not precede t0")
        for name in ("rel_tol", "abs_tol"):
            tol = getattr(self, name)
            if not (0.0 < tol <= 1e-2):
                raise ValueError(f"{name} must lie in (0, 1e-2]")
        if self.sample_count < 1:
            raise ValueError("sample_count must be positive")
        if self.horizon > self.t0 and self.sample_count < 2:
            raise ValueError("sample_count must be >= 2 for a nonempty time span")
        if self.sample_spacing not in ("linear", "logarithmic"):
            raise ValueError("sample_spacing must be 'linear' or 'logarithmic'")
        if self.u0.shape != self.v0.shape:
            raise ValueError("u0 and v0 must have the same dimension")

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "t0": self.t0,
            "u0": self.u0.tolist(),
            "v0": self.v0.tolist(),
            "horizon": self.horizon,
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "sample_count": self.sample_count,
            "sample_spacing": self.sample_spacing,
        }


def sample_times(cfg: DynamicsConfig) -> np.ndarray:
    """The reporting grid: sample_count points from t0 to horizon inclusive."""
    if cfg.horizon == cfg.t0:
        return np.array([cfg.t0])
    if cfg.sample_spacing == "linear":
        ts = np.linspace(cfg.t0, cfg.horizon, cfg.sample_count)
    else:
        ts = np.geomspace(cfg.t0, cfg.horizon, cfg.sample_count)
    ts[0], ts[-1] = cfg.t0, cfg.horizon
    return ts


@dataclass(frozen=True, eq=False)
class LiftedState:
    x: np.ndarray
    y: np.ndarray


@dataclass(frozen=True, eq=False)
class TrajectorySample:
    t: float
    x: np.ndarray
    v: np.ndarray
    y: np.ndarray
    eps: float
    gap: float
    grad_norm: float


@dataclass(eq=False)
class Trajectory:
    """Sampled solution plus running integrals and run provenance.

    Columns per sample i: time t[i], position x[i], velocity v[i], lifted
    auxiliary y[i] = v + beta*grad g(x), schedule value eps[i], objective gap
    g(x)-min g, gradient norm, and the accumulated integrals of eps/s,
    (eps/s)*|x - xstar|^2 and (1/s)*|x'|^2 from t0 to t[i].
    """

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    y: np.ndarray
    eps: np.ndarray
    gap: np.ndarray
    grad_norm: np.ndarray
    int_eps_over_t: np.ndarray
    int_erg_num: np.ndarray
    int_vel: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n_samples(self) -> int:
        return self.t.shape[0]

    @property
    def dimension(self) -> int:
        return self.x.shape[1]

    def sample(self, i: int) -> TrajectorySample:
        return TrajectorySample(
            t=float(self.t[i]),
            x=self.x[i],
            v=self.v[i],
            y=self.y[i],
            eps=float(self.eps[i]),
            gap=float(self.gap[i]),
            grad_norm=float(self.grad_norm[i]),
        )

    @property
    def samples(self) -> Iterator[TrajectorySample]:
        return (self.sample(i) for i in range(self.n_samples))


def lift_initial_conditions(obj: ObjectiveSpec, beta: float, u0, v0) -> LiftedState:
    """Initial lifted state: x = u0, y = v0 + beta * grad g(u0)."""
    u0 = _as_vector(u0, obj.dimension, "u0")
    v0 = _as_vector(v0, obj.dimension, "v0")
    return LiftedState(x=u0, y=v0 + beta * np.asarray(obj.gradient(u0), dtype=float))


def recover_velocity(obj: ObjectiveSpec, beta: float, state: LiftedState) -> np.ndarray:
    """x' = y - beta * grad g(x); exact algebraic inverse of the lift."""
    x = _as_vector(state.x, obj.dimension)
    y = _as_vector(state.y, obj.dimension, "y")
    return y - beta * np.asarray(obj.gradient(x), dtype=float)


def vector_field(
    obj: ObjectiveSpec,
    s: TikhonovSchedule,
    cfg: DynamicsConfig,
    t: float,
    state: LiftedState,
) -> tuple[np.ndarray, np.ndarray]:
    """Right-hand side of the lifted system at (t, state)."""
    if t <= 0.0:
        raise ValueError("the damping coefficient alpha/t is singular at t <= 0")
    g = np.asarray(obj.gradient(state.x), dtype=float)
    dx = state.y - cfg.beta * g
    dy = (
        -(cfg.alpha / t) * state.y
        - (1.0 - cfg.alpha * cfg.beta / t) * g
        - s.eps(t) * state.x
    )
    return dx, dy


def _reference_minimizer(obj: ObjectiveSpec) -> np.ndarray:
    if obj.min_norm_solution is None:
        raise ValueError(
            "the running ergodic integral needs the problem's minimum-norm solution"
        )
    return np.asarray(obj.min_norm_solution, dtype=float)


def _finish(
    obj: ObjectiveSpec,
    s: TikhonovSchedule,
    cfg: DynamicsConfig,
    ts: np.ndarray,
    Z: np.ndarray,
    stats: dict,
    formulation: str,
) -> Trajectory:
    d = obj.dimension
    n = ts.shape[0]
    X = Z[:, :d]
    if formulation == "lifted":
        Y = Z[:, d : 2 * d]
        G = np.array([obj.gradient(X[i]) for i in range(n)])
        V = Y - cfg.beta * G
    else:
        V = Z[:, d : 2 * d]
        G = np.array([obj.gradient(X[i]) for i in range(n)])
        Y = V + cfg.beta * G
    gaps = np.array([obj.value(X[i]) for i in range(n)]) - obj.min_value
    eps_vals = np.array([s.eps(t) for t in ts])
    return Trajectory(
        t=ts,
        x=X,
        v=V,
        y=Y,
        eps=eps_vals,
        gap=gaps,
        grad_norm=np.linalg.norm(G, axis=1),
        int_eps_over_t=Z[:, 2 * d],
        int_erg_num=Z[:, 2 * d + 1],
        int_vel=Z[:, 2 * d + 2],
        meta={
            "formulation": formulation,
            "problem_dimension": d,
            "schedule": s.to_dict(),
            "dynamics": cfg.to_dict(),
            "stats": dict(stats),
        },
    )


def integrate(obj: ObjectiveSpec, s: TikhonovSchedule, cfg: DynamicsConfig) -> Trajectory:
    """Adaptive integration of the lifted system over [t0, horizon].

    On step underflow or non-finite state an IntegrationError is raised whose
    ``partial`` attribute holds the trajectory up to the last completed sample.
    """
    d = obj.dimension
    xstar = _reference_minimizer(obj)
    alpha, beta = cfg.alpha, cfg.beta
    grad = obj.gradient
    eps = s.eps
    init = lift_initial_conditions(obj, beta, cfg.u0, cfg.v0)

    def rhs(t: float, z: np.ndarray) -> np.ndarray:
        x = z[:d]
        y = z[d : 2 * d]
        g = grad(x)
        dx = y - beta * g
        e = eps(t)
        out = np.empty(2 * d + 3)
        out[:d] = dx
        out[d : 2 * d] = -(alpha / t) * y - (1.0 - alpha * beta / t) * g - e * x
        out[2 * d] = e / t
        diff = x - xstar
        out[2 * d + 1] = (e / t) * np.dot(diff, diff)
        out[2 * d + 2] = np.dot(dx, dx) / t
        return out

    z0 = np.concatenate([init.x, init.y, np.zeros(3)])
    ts = sample_times(cfg)
    try:
        Z, stats = solve(rhs, z0, ts, cfg.rel_tol, cfg.abs_tol)
    except IntegrationError as exc:
        if exc.rows is not None:
            exc.partial = _finish(obj, s, cfg, ts[: exc.rows.shape[0]], exc.rows,
                                  exc.stats, "lifted")
        raise
    return _finish(obj, s, cfg, ts, Z, stats, "lifted")


def integrate_direct(obj: ObjectiveSpec, s: TikhonovSchedule, cfg: DynamicsConfig) -> Trajectory:
    """Integrate the original second-order system in (x, x') as cross-check.

    The Hessian damping term is evaluated with Hessian-vector products; the
    sampling contract matches ``integrate``.
    """
    d = obj.dimension
    xstar = _reference_minimizer(obj)
    alpha, beta = cfg.alpha, cfg.beta
    grad, hvp = obj.gradient, obj.hessian_vec
    eps = s.eps

    def rhs(t: float, z: np.ndarray) -> np.ndarray:
        x = z[:d]
        v = z[d : 2 * d]
        g = grad(x)
        e = eps(t)
        out = np.empty(2 * d + 3)
        out[:d] = v
        out[d : 2 * d] = -(alpha / t) * v - beta * hvp(x, v) - g - e * x
        out[2 * d] = e / t
        diff = x - xstar
        out[2 * d + 1] = (e / t) * np.dot(diff, diff)
        out[2 * d + 2] = np.dot(v, v) / t
        return out

    u0 = _as_vector(cfg.u0, d, "u0")
    v0 = _as_vector(cfg.v0, d, "v0")
    z0 = np.concatenate([u0, v0, np.zeros(3)])
    ts = sample_times(cfg)
    try:
        Z, stats = solve(rhs, z0, ts, cfg.rel_tol, cfg.abs_tol)
    except IntegrationError as exc:
        if exc.rows is not None:
            exc.partial = _finish(obj, s, cfg, ts[: exc.rows.shape[0]], exc.rows,
                                  exc.stats, "direct")
        raise
    return _finish(obj, s, cfg, ts, Z, stats, "direct")
