"""Shared test oracles: finite differences, synthetic trajectories, and the
exponent-arithmetic truth table for power-law schedules.

The finite-difference routines depend only on the objective's value/gradient
callables, so they stay independent of the analytic derivatives they check.
"""
import numpy as np

from tikhoflow import Trajectory

# Truth table for eps(t) = t^-gamma (scale 1, t0 1), derived by exponent
# arithmetic before the checkers were written. Columns: finiteness of
# int eps/t, int t*eps, int eps; condition (a) at beta=1, a=2; condition (b)
# at a=1; t^2*eps growth for alpha=3 and for alpha=6 (c=1); averaged limit
# for alpha=3 and alpha=6 (beta=1).
POWER_TRUTH = {
    0.5: ("finite", "infinite", "infinite", False, False, True, True, False, False),
    1.0: ("finite", "infinite", "infinite", True, True, True, True, False, False),
    1.1: ("finite", "infinite", "finite", True, True, True, True, True, True),
    1.5: ("finite", "infinite", "finite", True, True, True, True, True, True),
    1.9: ("finite", "infinite", "finite", True, True, True, True, True, True),
    2.0: ("finite", "infinite", "finite", True, True, False, False, False, True),
    2.5: ("finite", "finite", "finite", True, True, False, False, False, True),
    3.0: ("finite", "finite", "finite", True, True, False, False, False, False),
}


def central_gradient(value, x: np.ndarray) -> np.ndarray:
    h = 1e-6 * (1.0 + np.linalg.norm(x))
    out = np.empty_like(x)
    for i in range(x.shape[0]):
        e = np.zeros_like(x)
        e[i] = h
        out[i] = (value(x + e) - value(x - e)) / (2.0 * h)
    return out


def central_hvp(gradient, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    h = 1e-6 * (1.0 + np.linalg.norm(x))
    return (np.asarray(gradient(x + h * v)) - np.asarray(gradient(x - h * v))) / (2.0 * h)


def synthetic_trajectory(t, x, eps, xstar, v=None) -> Trajectory:
    """Hand-built trajectory with exact running integrals via trapezoid on a fine grid."""
    t = np.asarray(t, float)
    x = np.atleast_2d(np.asarray(x, float))
    if x.shape[0] != t.shape[0]:
        x = x.T
    n, d = x.shape
    v = np.zeros_like(x) if v is None else np.asarray(v, float)
    eps_vals = np.asarray([eps(tt) for tt in t])
    diff2 = np.sum((x - np.asarray(xstar)) ** 2, axis=1)
    w1 = eps_vals / t
    w2 = w1 * diff2
    w3 = np.sum(v**2, axis=1) / t
    def cum(w):
        out = np.zeros(n)
        out[1:] = np.cumsum(0.5 * (w[1:] + w[:-1]) * np.diff(t))
        return out
    return Trajectory(
        t=t,
        x=x,
        v=v,
        y=v.copy(),
        eps=eps_vals,
        gap=np.zeros(n),
        grad_norm=np.zeros(n),
        int_eps_over_t=cum(w1),
        int_erg_num=cum(w2),
        int_vel=cum(w3),
        meta={"synthetic": True},
    )
