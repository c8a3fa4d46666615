"""Vanishing regularization schedules and the decay conditions they satisfy.

A schedule is the map t -> eps(t) that multiplies the state inside the
dynamics. The checkers in this module decide, per schedule, which analytic
conditions hold: the damped-decay condition (a) eps'(t) <= -(a*beta/2)*eps^2(t),
the envelope condition (b) eps(t) <= a/t, integrability of eps/t, t*eps and
eps, the growth of t^2*eps(t), and the averaged limit required for strong
convergence to the minimum-norm solution.

Verdict conventions: "holds" carries the smallest grid-certified threshold t1,
"fails" carries a witness time, and tabulated schedules are never certified
beyond their grid ("unknown"). Certification means the inequality was checked
on a geometric grid {t1 * 1.05^k} up to T_CHECK together with the closed-form
tail argument available for the analytic kinds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

T_CHECK = 1e6
_GRID_RATIO = 1.05

FINITE = "finite"
INFINITE = "infinite"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    status: str  # "holds" | "fails" | "unknown"
    t1: Optional[float] = None
    witness: Optional[float] = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_dict(self) -> dict:
        return {"status": self.status, "t1": self.t1, "witness": self.witness, "note": self.note}


def _holds(t1: float, note: str = "") -> Verdict:
    return Verdict("holds", t1=float(t1), note=note)


def _fails(witness: float, note: str = "") -> Verdict:
    return Verdict("fails", witness=float(witness), note=note)


def _unknown(note: str = "") -> Verdict:
    return Verdict("unknown", note=note)


@dataclass(frozen=True, eq=False)
class TikhonovSchedule:
    """A nonincreasing C^1 regularization weight on [t0, infinity).

    kind is one of "power" (scale * t^-gamma), "logarithmic"
    (1 / log(offset + t)), "zero", or "tabulated" (piecewise-linear on a
    grid, defined only on the grid span).
    """

    kind: str
    t0: float = 1.0
    gamma: float = 0.0
    scale: float = 1.0
    offset: float = math.e
    grid_t: Optional[np.ndarray] = None
    grid_eps: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.t0 <= 0.0:
            raise ValueError("t0 must be positive")
        if self.kind == "power":
            if self.gamma <= 0.0:
                raise ValueError("power schedule needs gamma > 0 (use kind 'zero' otherwise)")
            if self.scale <= 0.0:
                raise ValueError("power schedule needs scale > 0")
        elif self.kind == "logarithmic":
            if self.offset + self.t0 <= 1.0:
                raise ValueError("logarithmic schedule needs offset + t0 > 1")
        elif self.kind == "zero":
            pass
        elif self.kind == "tabulated":
            t = np.asarray(self.grid_t, dtype=float)
            e = np.asarray(self.grid_eps, dtype=float)
            if t.ndim != 1 or t.shape != e.shape or t.shape[0] < 2:
                raise ValueError("tabulated schedule needs matching 1-d grids of length >= 2")
            if np.any(np.diff(t) <= 0):
                raise ValueError("tabulated times must be strictly increasing")
            if np.any(e < 0):
                raise ValueError("tabulated values must be nonnegative")
            if np.any(np.diff(e) > 1e-14 * (1.0 + np.abs(e[:-1]))):
                raise ValueError("tabulated values must be nonincreasing")
            object.__setattr__(self, "grid_t", t)
            object.__setattr__(self, "grid_eps", e)
            object.__setattr__(self, "t0", float(t[0]))
        else:
            raise ValueError(
                f"unknown schedule kind {self.kind!r}; known: power, logarithmic, zero, tabulated"
            )

    def _check_domain(self, t):
        tmin = np.min(t)
        if tmin < self.t0 - 1e-12 * max(1.0, self.t0):
            raise ValueError(f"schedule evaluated at t={tmin:g} below t0={self.t0:g}")
        if self.kind == "tabulated":
            tmax = np.max(t)
            hi = self.grid_t[-1]
            if tmax > hi * (1.0 + 1e-12):
                raise ValueError(f"tabulated schedule evaluated at t={tmax:g} beyond grid end {hi:g}")

    def eps(self, t):
        """eps(t); accepts scalars or arrays, errors below t0 / beyond a grid."""
        t_arr = np.asarray(t, dtype=float)
        self._check_domain(t_arr)
        if self.kind == "power":
            out = self.scale * t_arr ** (-self.gamma)
        elif self.kind == "logarithmic":
            out = 1.0 / np.log(self.offset + t_arr)
        elif self.kind == "zero":
            out = np.zeros_like(t_arr)
        else:
            out = np.interp(t_arr, self.grid_t, self.grid_eps)
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def eps_dot(self, t):
        """d eps / dt; piecewise slope for tabulated grids."""
        t_arr = np.asarray(t, dtype=float)
        self._check_domain(t_arr)
        if self.kind == "power":
            out = -self.gamma * self.scale * t_arr ** (-self.gamma - 1.0)
        elif self.kind == "logarithmic":
            u = self.offset + t_arr
            out = -1.0 / (u * np.log(u) ** 2)
        elif self.kind == "zero":
            out = np.zeros_like(t_arr)
        else:
            slopes = np.diff(self.grid_eps) / np.diff(self.grid_t)
            idx = np.clip(np.searchsorted(self.grid_t, t_arr, side="right") - 1, 0, len(slopes) - 1)
            out = slopes[idx]
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def integral_t_eps(self, lo: float, hi: float) -> float:
        """Integral of s*eps(s) over [lo, hi]; closed form where available."""
        if hi < lo:
            raise ValueError("empty integration interval")
        if self.kind == "zero":
            return 0.0
        if self.kind == "power":
            e = 2.0 - self.gamma
            if abs(e) < 1e-14:
                return self.scale * math.log(hi / lo)
            return self.scale * (hi**e - lo**e) / e
        return _log_simpson(lambda s: s * self.eps(s), lo, hi)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "t0": self.t0}
        if self.kind == "power":
            d.update(gamma=self.gamma, scale=self.scale)
        elif self.kind == "logarithmic":
            d.update(offset=self.offset)
        elif self.kind == "tabulated":
            d.update(times=self.grid_t.tolist(), values=self.grid_eps.tolist())
        return d


def power_schedule(gamma: float, scale: float = 1.0, t0: float = 1.0) -> TikhonovSchedule:
    return TikhonovSchedule(kind="power", t0=t0, gamma=gamma, scale=scale)


def logarithmic_schedule(offset: float = math.e, t0: float = 1.0) -> TikhonovSchedule:
    return TikhonovSchedule(kind="logarithmic", t0=t0, offset=offset)


def zero_schedule(t0: float = 1.0) -> TikhonovSchedule:
    return TikhonovSchedule(kind="zero", t0=t0)


def tabulated_schedule(times, values) -> TikhonovSchedule:
    return TikhonovSchedule(kind="tabulated", grid_t=np.asarray(times, float), grid_eps=np.asarray(values, float))


def eps(s: TikhonovSchedule, t: float) -> float:
    return s.eps(t)


def _log_simpson(f, lo: float, hi: float, points_per_decade: int = 200) -> float:
    """Composite Simpson on a log-spaced grid; deterministic fixed resolution."""
    if hi <= lo:
        return 0.0
    decades = max(math.log10(hi / lo), 1e-9)
    n = 2 * max(8, int(points_per_decade * decades / 2))
    grid = np.geomspace(lo, hi, n + 1)
    vals = np.array([f(g) for g in grid])
    mid = 0.5 * (grid[:-1] + grid[1:])
    vmid = np.array([f(g) for g in mid])
    return float(np.sum((grid[1:] - grid[:-1]) / 6.0 * (vals[:-1] + 4.0 * vmid + vals[1:])))


def _grid_certify(predicate, t1: float, T_check: float = T_CHECK) -> Optional[float]:
    """First grid time in {t1 * 1.05^k} <= T_check violating the predicate, else None."""
    if t1 >= T_check:
        return None
    n = int(math.log(T_check / t1) / math.log(_GRID_RATIO)) + 1
    grid = t1 * _GRID_RATIO ** np.arange(n + 1)
    grid = grid[grid <= T_check * (1.0 + 1e-12)]
    ok = predicate(grid)
    bad = np.nonzero(~ok)[0]
    return float(grid[bad[0]]) if bad.size else None


_CERT_NOTE = "grid-certified on {t1*1.05^k} up to 1e6 with analytic tail"


def check_condition_a(s: TikhonovSchedule, beta: float, a: float) -> Verdict:
    """eps'(t) <= -(a*beta/2) * eps(t)^2 for all t beyond some threshold."""
    if beta < 0.0:
        raise ValueError("beta must be nonnegative")
    if beta > 0.0 and a <= 1.0:
        raise ValueError("the damped-decay condition requires a > 1 when beta > 0")
    if beta == 0.0 or s.kind == "zero":
        # right-hand side vanishes (or both sides do); monotone eps settles it
        return _holds(s.t0, note="degenerate: right-hand side is zero and eps is nonincreasing")
    rhs_coeff = 0.5 * a * beta

    def pred(ts: np.ndarray) -> np.ndarray:
        rhs = -rhs_coeff * np.asarray(s.eps(ts)) ** 2
        # relative slack absorbs roundoff at exact-equality thresholds
        return s.eps_dot(ts) <= rhs + 1e-12 * (1.0 + np.abs(rhs))

    if s.kind == "power":
        # need gamma * t^(gamma-1) >= (a*beta/2) * scale
        target = rhs_coeff * s.scale
        if s.gamma > 1.0:
            t1 = max(s.t0, (target / s.gamma) ** (1.0 / (s.gamma - 1.0)))
            bad = _grid_certify(pred, t1)
            if bad is None:
                return _holds(t1, note=_CERT_NOTE)
            return _fails(bad, note="grid check contradicts closed form")
        if s.gamma == 1.0:
            if s.gamma >= target:
                bad = _grid_certify(pred, s.t0)
                if bad is None:
                    return _holds(s.t0, note=_CERT_NOTE)
                return _fails(bad)
            return _fails(s.t0, note="gamma=1: inequality fails uniformly")
        # gamma < 1: left side decays, eventually fails
        if s.gamma * s.t0 ** (s.gamma - 1.0) < target:
            return _fails(s.t0)
        witness = 2.0 * (s.gamma / target) ** (1.0 / (1.0 - s.gamma))
        return _fails(max(witness, s.t0), note="t^(gamma-1) decays below the required level")
    if s.kind == "logarithmic":
        # reduces to offset + t <= 2/(a*beta): fails for large t
        bound = 2.0 / (a * beta)
        witness = max(s.t0, 2.0 * max(bound - s.offset, s.t0))
        return _fails(witness, note="1/(offset+t) eventually drops below a*beta/2")
    # tabulated: can refute on the grid, never certify beyond it
    ts = s.grid_t[s.grid_t >= s.t0]
    mids = 0.5 * (ts[:-1] + ts[1:]) if ts.size > 1 else ts
    bad = ~pred(mids)
    if np.any(bad):
        return _fails(float(mids[np.nonzero(bad)[0][0]]), note="violated inside the tabulated grid")
    return _unknown("holds on the tabulated grid; tail behaviour unknown beyond it")


def check_condition_b(s: TikhonovSchedule, a: float) -> Verdict:
    """eps(t) <= a/t for all t beyond some threshold."""
    if a <= 0.0:
        raise ValueError("the envelope condition requires a > 0")

    def pred(ts: np.ndarray) -> np.ndarray:
        return ts * np.asarray(s.eps(ts)) <= a * (1.0 + 1e-12)

    if s.kind == "zero":
        return _holds(s.t0, note="eps is identically zero")
    if s.kind == "power":
        # scale * t^(1-gamma) <= a
        if s.gamma > 1.0:
            t1 = max(s.t0, (s.scale / a) ** (1.0 / (s.gamma - 1.0)))
            bad = _grid_certify(pred, t1)
            if bad is None:
                return _holds(t1, note=_CERT_NOTE)
            return _fails(bad, note="grid check contradicts closed form")
        if s.gamma == 1.0:
            if s.scale <= a:
                return _holds(s.t0, note="t*eps is constant at scale <= a")
            return _fails(s.t0, note="t*eps is constant at scale > a")
        witness = max(s.t0, 2.0 * (a / s.scale) ** (1.0 / (1.0 - s.gamma)))
        return _fails(witness, note="t*eps grows like t^(1-gamma)")
    if s.kind == "logarithmic":
        # need t <= a*log(offset+t): fails once t outgrows the logarithm
        t = max(s.t0, 1.0)
        for _ in range(200):
            if t > a * math.log(s.offset + t):
                return _fails(t, note="t/log(offset+t) is unbounded")
            t *= 2.0
        return _fails(t, note="t/log(offset+t) is unbounded")
    ts = s.grid_t[s.grid_t >= s.t0]
    bad = ~pred(ts)
    if np.any(bad):
        return _fails(float(ts[np.nonzero(bad)[0][0]]), note="violated inside the tabulated grid")
    return _unknown("holds on the tabulated grid; tail behaviour unknown beyond it")


@dataclass(frozen=True)
class IntegralClassification:
    int_eps_over_t: str
    int_t_eps: str
    int_eps: str
    partial_sums: Optional[dict] = None

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.int_eps_over_t, self.int_t_eps, self.int_eps)

    def to_dict(self) -> dict:
        d = {
            "int_eps_over_t": self.int_eps_over_t,
            "int_t_eps": self.int_t_eps,
            "int_eps": self.int_eps,
        }
        if self.partial_sums is not None:
            d["partial_sums"] = self.partial_sums
        return d


def classify_integrals(s: TikhonovSchedule) -> IntegralClassification:
    """Finiteness of the improper integrals of eps/t, t*eps and eps on [t0, inf)."""
    if s.kind == "zero":
        return IntegralClassification(FINITE, FINITE, FINITE)
    if s.kind == "power":
        # power-law integrand t^e converges at infinity iff e < -1
        def cls(exponent: float) -> str:
            return FINITE if exponent < -1.0 else INFINITE

        return IntegralClassification(cls(-s.gamma - 1.0), cls(1.0 - s.gamma), cls(-s.gamma))
    if s.kind == "logarithmic":
        # 1/(t log t) already diverges; the larger integrands follow
        return IntegralClassification(INFINITE, INFINITE, INFINITE)
    t, e = s.grid_t, s.grid_eps
    sums = {
        "int_eps_over_t": float(np.trapezoid(e / t, t)),
        "int_t_eps": float(np.trapezoid(t * e, t)),
        "int_eps": float(np.trapezoid(e, t)),
        "grid_end": float(t[-1]),
    }
    return IntegralClassification(UNKNOWN, UNKNOWN, UNKNOWN, partial_sums=sums)


def t2eps_threshold(alpha: float, beta: float, c: float) -> float:
    """Lower bound required of t^2*eps(t) in the strong-convergence setting."""
    return (2.0 / 3.0) * alpha * (alpha / 3.0 - 1.0 + beta * c * c)


def check_t2eps_growth(s: TikhonovSchedule, alpha: float, beta: float, c: float = 1.0) -> Verdict:
    """alpha = 3: t^2*eps -> infinity; alpha > 3: eventual bound t^2*eps >= threshold."""
    if alpha < 3.0:
        raise ValueError("the growth condition is formulated for alpha >= 3")
    if s.kind == "zero":
        return _fails(s.t0, note="eps is identically zero")
    if alpha == 3.0:
        if s.kind == "power":
            if s.gamma < 2.0:
                return _holds(s.t0, note=f"t^2*eps grows like t^{2.0 - s.gamma:g}")
            if s.gamma == 2.0:
                return _fails(s.t0, note=f"t^2*eps is constant at {s.scale:g}")
            return _fails(s.t0, note="t^2*eps decays")
        if s.kind == "logarithmic":
            return _holds(s.t0, note="t^2/log(offset+t) diverges")
        return _unknown("divergence cannot be decided from a finite grid")
    bound = t2eps_threshold(alpha, beta, c)

    def pred(ts: np.ndarray) -> np.ndarray:
        return ts * ts * np.asarray(s.eps(ts)) >= bound * (1.0 - 1e-12)

    if s.kind == "power":
        if s.gamma < 2.0:
            t1 = max(s.t0, (bound / s.scale) ** (1.0 / (2.0 - s.gamma)))
            bad = _grid_certify(pred, t1)
            if bad is None:
                return _holds(t1, note=_CERT_NOTE)
            return _fails(bad, note="grid check contradicts closed form")
        if s.gamma == 2.0:
            if s.scale >= bound:
                return _holds(s.t0, note="t^2*eps is constant above the threshold")
            return _fails(s.t0, note=f"t^2*eps is constant at {s.scale:g} < {bound:g}")
        return _fails(max(s.t0, (s.scale / bound) ** (1.0 / (s.gamma - 2.0))) * 2.0,
                      note="t^2*eps decays below any positive threshold")
    if s.kind == "logarithmic":
        t1 = max(s.t0, 1.0)
        while t1 * t1 < bound * math.log(s.offset + t1) and t1 < 1e12:
            t1 *= 2.0
        bad = _grid_certify(pred, t1)
        if bad is None:
            return _holds(t1, note=_CERT_NOTE)
        return _fails(bad)
    ts = s.grid_t[s.grid_t >= s.t0]
    bad = ~pred(ts)
    if np.any(bad) and not pred(np.array([ts[-1]]))[0]:
        return _unknown("below the threshold at the grid end; tail unknown")
    return _unknown("eventual lower bound cannot be certified from a finite grid")


def check_limit_condition(s: TikhonovSchedule, alpha: float, beta: float) -> Verdict:
    """Averaged limit: beta / (eps(t) t^(alpha/3+1)) * int eps^2 s^(alpha/3+1) ds -> 0."""
    if alpha < 3.0:
        raise ValueError("the averaged limit is formulated for alpha >= 3")
    if beta == 0.0 and s.kind != "zero":
        return _holds(s.t0, note="beta = 0 makes the expression identically zero")
    if s.kind == "zero":
        return _fails(s.t0, note="eps is identically zero; the averaged ratio is undefined")
    m = alpha / 3.0 + 1.0
    if s.kind == "power":
        g = s.gamma
        if g <= 1.0:
            return _fails(s.t0, note=f"ratio behaves like t^{1.0 - g:g} (log t at gamma=1), no decay")
        if g < m:
            rate = min(g - 1.0, m - g)
            return _holds(s.t0, note=f"ratio decays like t^-{rate:g}")
        if g == m:
            return _fails(s.t0, note="ratio tends to a positive constant")
        return _fails(s.t0, note="numerator integral converges while eps*t^(alpha/3+1) stays bounded")
    if s.kind == "logarithmic":
        return _fails(s.t0, note="ratio grows like t/log t")
    # tabulated: report the trend of the ratio over the grid
    t, e = s.grid_t, s.grid_eps
    w = e * e * t**m
    num = np.concatenate([[0.0], np.cumsum(0.5 * (w[1:] + w[:-1]) * np.diff(t))])
    denom = e * t**m
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(denom > 0, beta * num / denom, np.inf)
    return _unknown(f"ratio at grid end: {float(ratio[-1]):.3e}; limit undecidable from finite data")


def check_sufficient_pair(s: TikhonovSchedule, alpha: float) -> Verdict:
    """Sufficient pair: int eps < inf and t^(alpha/3+1)*eps(t) eventually nondecreasing."""
    m = alpha / 3.0 + 1.0
    ints = classify_integrals(s)
    if s.kind == "power":
        if ints.int_eps != FINITE:
            return _fails(s.t0, note="int eps dt diverges")
        if s.gamma <= m:
            note = "t^(alpha/3+1)*eps is nondecreasing"
            if s.gamma == m:
                note += " (constant); note eps*t^(alpha/3+1) does not diverge"
            return _holds(s.t0, note=note)
        return _fails(s.t0, note="t^(alpha/3+1)*eps is eventually decreasing")
    if s.kind == "logarithmic":
        return _fails(s.t0, note="int eps dt diverges")
    if s.kind == "zero":
        return _holds(s.t0, note="vacuous: eps*t^(alpha/3+1) is identically zero and never diverges")
    return _unknown("pair undecidable from a finite grid")


THEOREM_IDS = (
    "function_values_converge",
    "gap_rate_O_inverse_t2",
    "gap_rate_o_inverse_t2",
    "trajectory_weak_convergence",
    "ergodic_strong_convergence",
    "strong_convergence_min_norm",
)


@dataclass(frozen=True)
class HypothesisReport:
    """Structured verdicts for one schedule under fixed (alpha, beta, a, c)."""

    alpha: float
    beta: float
    a: float
    c: float
    cond_a: Verdict
    cond_b: Verdict
    int_eps_over_t: str
    int_t_eps: str
    int_eps: str
    t2eps_growth: Verdict
    limit_condition: Verdict
    sufficient_pair: Verdict
    applicable_theorems: tuple = ()
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "a": self.a,
            "c": self.c,
            "cond_a": self.cond_a.to_dict(),
            "cond_b": self.cond_b.to_dict(),
            "int_eps_over_t": self.int_eps_over_t,
            "int_t_eps": self.int_t_eps,
            "int_eps": self.int_eps,
            "t2eps_growth": self.t2eps_growth.to_dict(),
            "limit_condition": self.limit_condition.to_dict(),
            "sufficient_pair": self.sufficient_pair.to_dict(),
            "applicable_theorems": list(self.applicable_theorems),
            "notes": list(self.notes),
        }


def applicable_theorems_from(
    alpha: float,
    cond_a: Verdict,
    cond_b: Verdict,
    int_eps_over_t: str,
    int_t_eps: str,
    t2eps_growth: Verdict,
    limit_condition: Verdict,
) -> tuple:
    """Recompute the applicable-theorem set from individual verdicts."""
    out = []
    either = cond_a.holds or cond_b.holds
    if alpha >= 3.0 and ((cond_a.holds and int_eps_over_t == FINITE) or cond_b.holds):
        out.append("function_values_converge")
    if alpha >= 3.0 and int_t_eps == FINITE and either:
        out.append("gap_rate_O_inverse_t2")
    if alpha > 3.0 and int_t_eps == FINITE and either:
        out.append("gap_rate_o_inverse_t2")
        out.append("trajectory_weak_convergence")
    if alpha > 0.0 and int_eps_over_t == INFINITE:
        out.append("ergodic_strong_convergence")
    if (
        alpha >= 3.0
        and int_eps_over_t == FINITE
        and cond_a.holds
        and limit_condition.holds
        and t2eps_growth.holds
    ):
        out.append("strong_convergence_min_norm")
    return tuple(out)


def check_strong_convergence_hypotheses(
    s: TikhonovSchedule,
    alpha: float,
    beta: float,
    a: float = 2.0,
    c: float = 1.0,
    a_envelope: float = 1.0,
) -> HypothesisReport:
    """Evaluate every schedule hypothesis for fixed (alpha, beta, a, c).

    `a` parametrizes the damped-decay condition (a), `a_envelope` the
    envelope condition (b); `c` enters the alpha > 3 growth threshold.
    """
    if alpha < 3.0:
        raise ValueError("strong-convergence hypotheses require alpha >= 3")
    ints = classify_integrals(s)
    cond_a = check_condition_a(s, beta, a)
    cond_b = check_condition_b(s, a_envelope)
    growth = check_t2eps_growth(s, alpha, beta, c)
    limit = check_limit_condition(s, alpha, beta)
    pair = check_sufficient_pair(s, alpha)
    notes = []
    if s.kind == "power" and 1.0 < s.gamma < 2.0 and ints.int_t_eps == INFINITE:
        notes.append(
            "t^-gamma with gamma in (1,2) satisfies the averaged-limit and pair "
            "conditions while int t*eps(t) dt is infinite; conclusions that "
            "require that integral are not implied for this family"
        )
    theorems = applicable_theorems_from(
        alpha, cond_a, cond_b, ints.int_eps_over_t, ints.int_t_eps, growth, limit
    )
    return HypothesisReport(
        alpha=alpha,
        beta=beta,
        a=a,
        c=c,
        cond_a=cond_a,
        cond_b=cond_b,
        int_eps_over_t=ints.int_eps_over_t,
        int_t_eps=ints.int_t_eps,
        int_eps=ints.int_eps,
        t2eps_growth=growth,
        limit_condition=limit,
        sufficient_pair=pair,
        applicable_theorems=theorems,
        notes=tuple(notes),
    )


def crossing_time_on_grid(s: TikhonovSchedule, bound: float, times: np.ndarray) -> Optional[float]:
    """Smallest grid time with t^2*eps(t) >= bound, or None."""
    times = np.asarray(times, dtype=float)
    ok = times * times * s.eps(times) >= bound * (1.0 - 1e-15)
    idx = np.nonzero(ok)[0]
    return float(times[idx[0]]) if idx.size else None
