"""Convex test objectives with analytic gradients, Hessian products and minimizers.

Every builtin carries its exact minimal value and, where the argmin is not a
singleton, the minimum-norm minimizer, so that trajectory diagnostics can be
checked against closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

Vector = np.ndarray


@dataclass(frozen=True)
class ArgminSet:
    """Membership test for the solution set of an objective."""

    text: str
    contains: Callable[[Vector], bool]


@dataclass(frozen=True, eq=False)
class ObjectiveSpec:
    """A convex, twice differentiable objective on R^d.

    `value`, `gradient` and `hessian_vec` must be mutually consistent;
    `min_value` is the exact minimum and `min_norm_solution`, when present,
    the smallest-norm minimizer. Instances are immutable and safe to share.
    """

    dimension: int
    value: Callable[[Vector], float]
    gradient: Callable[[Vector], Vector]
    hessian_vec: Callable[[Vector, Vector], Vector]
    min_value: float
    min_norm_solution: Optional[Vector] = None
    argmin_description: Optional[ArgminSet] = None


def _as_vector(x, dimension: int, name: str = "x") -> Vector:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or x.shape[0] != dimension:
        raise ValueError(
            f"{name} has shape {x.shape}, expected vector of dimension {dimension}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite entries")
    return x


def evaluate(obj: ObjectiveSpec, x) -> tuple[float, Vector]:
    """Return (g(x), grad g(x))."""
    x = _as_vector(x, obj.dimension)
    return float(obj.value(x)), np.asarray(obj.gradient(x), dtype=float)


def hessian_vector_product(obj: ObjectiveSpec, x, v) -> Vector:
    """Return hess g(x) @ v without forming the Hessian."""
    x = _as_vector(x, obj.dimension)
    v = _as_vector(v, obj.dimension, "v")
    return np.asarray(obj.hessian_vec(x, v), dtype=float)


def min_norm_solution(obj: ObjectiveSpec) -> Vector:
    """The smallest-norm minimizer; available for all builtins."""
    if obj.min_norm_solution is None:
        raise ValueError("objective does not carry an analytic minimum-norm solution")
    return np.array(obj.min_norm_solution, dtype=float)


# -- builtins ---------------------------------------------------------------


def _paper1d() -> ObjectiveSpec:
    # piecewise cubic, flat on [-1, 1]; C^2 with vanishing derivatives at the seams
    def value(x: Vector) -> float:
        s = x[0]
        if s < -1.0:
            return -((s + 1.0) ** 3)
        if s > 1.0:
            return (s - 1.0) ** 3
        return 0.0

    def gradient(x: Vector) -> Vector:
        s = x[0]
        if s < -1.0:
            return np.array([-3.0 * (s + 1.0) ** 2])
        if s > 1.0:
            return np.array([3.0 * (s - 1.0) ** 2])
        return np.array([0.0])

    def hessian_vec(x: Vector, v: Vector) -> Vector:
        s = x[0]
        if s < -1.0:
            h = -6.0 * (s + 1.0)
        elif s > 1.0:
            h = 6.0 * (s - 1.0)
        else:
            h = 0.0
        return np.array([h * v[0]])

    return ObjectiveSpec(
        dimension=1,
        value=value,
        gradient=gradient,
        hessian_vec=hessian_vec,
        min_value=0.0,
        min_norm_solution=np.array([0.0]),
        argmin_description=ArgminSet(
            text="interval [-1, 1]",
            contains=lambda x: bool(abs(x[0]) <= 1.0 + 1e-12),
        ),
    )


def _shifted_quadratic(c) -> ObjectiveSpec:
    c = np.atleast_1d(np.asarray(c, dtype=float))
    d = c.shape[0]
    return ObjectiveSpec(
        dimension=d,
        value=lambda x: 0.5 * float(np.dot(x - c, x - c)),
        gradient=lambda x: x - c,
        hessian_vec=lambda x, v: np.array(v, dtype=float),
        min_value=0.0,
        min_norm_solution=c.copy(),
        argmin_description=ArgminSet(
            text="singleton {c}",
            contains=lambda x: bool(np.linalg.norm(x - c) <= 1e-9 * (1.0 + np.linalg.norm(c))),
        ),
    )


def _psd_quadratic(A, b) -> ObjectiveSpec:
    A = np.asarray(A, dtype=float)
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be a square matrix")
    d = A.shape[0]
    if b.shape[0] != d:
        raise ValueError("b does not match the dimension of A")
    if not np.allclose(A, A.T, rtol=1e-12, atol=1e-12):
        raise ValueError("A must be symmetric")
    A = 0.5 * (A + A.T)
    eigs = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    if eigs.min() < -1e-10 * scale:
        raise ValueError(f"A is indefinite (smallest eigenvalue {eigs.min():g})")
    xhat = np.linalg.pinv(A) @ b
    if np.linalg.norm(A @ xhat - b) > 1e-8 * (1.0 + np.linalg.norm(b)):
        raise ValueError("b is not in the range of A; the quadratic is unbounded below")
    return ObjectiveSpec(
        dimension=d,
        value=lambda x: 0.5 * float(x @ (A @ x)) - float(b @ x),
        gradient=lambda x: A @ x - b,
        hessian_vec=lambda x, v: A @ v,
        min_value=-0.5 * float(b @ xhat),
        min_norm_solution=xhat,
        argmin_description=ArgminSet(
            text="affine set {x : A x = b}",
            contains=lambda x: bool(
                np.linalg.norm(A @ x - b) <= 1e-9 * (1.0 + np.linalg.norm(b))
            ),
        ),
    )


def _least_squares(A, b) -> ObjectiveSpec:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if A.shape[0] != b.shape[0]:
        raise ValueError("row count of A does not match length of b")
    d = A.shape[1]
    xhat = np.linalg.pinv(A) @ b  # minimum-norm least-squares solution
    residual = A @ xhat - b
    At = A.T

    def value(x: Vector) -> float:
        r = A @ x - b
        return 0.5 * float(r @ r)

    return ObjectiveSpec(
        dimension=d,
        value=value,
        gradient=lambda x: At @ (A @ x - b),
        hessian_vec=lambda x, v: At @ (A @ v),
        min_value=0.5 * float(residual @ residual),
        min_norm_solution=xhat,
        argmin_description=ArgminSet(
            text="affine set {x : A^T A x = A^T b}",
            contains=lambda x: bool(
                np.linalg.norm(At @ (A @ x - b)) <= 1e-9 * (1.0 + np.linalg.norm(At @ b))
            ),
        ),
    )


_BUILTIN_NAMES = ("paper1d", "shifted_quadratic", "psd_quadratic", "least_squares")


def builtin(name: str, **params) -> ObjectiveSpec:
    """Construct a builtin objective by name.

    Known names: ``paper1d`` (no parameters), ``shifted_quadratic`` (``c``),
    ``psd_quadratic`` (``A``, ``b``), ``least_squares`` (``A``, ``b``).
    """
    if name == "paper1d":
        if params:
            raise ValueError("paper1d takes no parameters")
        return _paper1d()
    if name == "shifted_quadratic":
        if set(params) != {"c"}:
            raise ValueError("shifted_quadratic requires exactly the parameter c")
        return _shifted_quadratic(params["c"])
    if name == "psd_quadratic":
        if set(params) != {"A", "b"}:
            raise ValueError("psd_quadratic requires exactly the parameters A and b")
        return _psd_quadratic(params["A"], params["b"])
    if name == "least_squares":
        if set(params) != {"A", "b"}:
            raise ValueError("least_squares requires exactly the parameters A and b")
        return _least_squares(params["A"], params["b"])
    raise ValueError(f"unknown problem name {name!r}; known: {', '.join(_BUILTIN_NAMES)}")
