"""Config-driven experiment runner.

Verbs: ``run`` (single experiment), ``compare`` (zero schedule against a list
of power-law decays, shared dynamics), ``sweep`` (Cartesian grid over alpha,
beta, gamma), ``check-schedule`` (hypothesis verdicts only, no integration).

Each run writes three artifacts into <out>/<label>/: ``trajectory.csv`` with
the fixed column schema, ``report.json`` with the requested diagnostics, and
``manifest.json`` holding the fully resolved flat config (re-running a
manifest reproduces the CSV byte for byte). Exit status: 0 on success, 2 for
configuration errors, 3 for integrator failures (partial trajectory flushed).

No randomness is used anywhere; --seedless is accepted as a bare flag for
interface compatibility and rejected if given a value.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import diagnostics as diag
from .config import ConfigError, ExperimentConfig, load_config, resolve
from .dynamics import IntegrationError, Trajectory, integrate, sample_times
from .schedules import check_strong_convergence_hypotheses, crossing_time_on_grid, t2eps_threshold

_FMT = "%.17g"


def _fmt(value: float) -> str:
    return _FMT % value


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _write_json(path: Path, payload: dict):
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, default=_json_default) + "\n"
    )


def write_trajectory_csv(path: Path, traj: Trajectory, w_series: np.ndarray):
    """Fixed schema, 17 significant digits, '\\n' newlines, no trailing delimiter."""
    d = traj.dimension
    header = (
        ["t"]
        + [f"x_{i}" for i in range(d)]
        + [f"v_{i}" for i in range(d)]
        + ["eps", "gap", "grad_norm", "W", "int_eps_over_t", "int_erg_num", "int_vel"]
    )
    lines = [",".join(header)]
    for i in range(traj.n_samples):
        row = (
            [_fmt(traj.t[i])]
            + [_fmt(v) for v in traj.x[i]]
            + [_fmt(v) for v in traj.v[i]]
            + [
                _fmt(traj.eps[i]),
                _fmt(traj.gap[i]),
                _fmt(traj.grad_norm[i]),
                _fmt(w_series[i]),
                _fmt(traj.int_eps_over_t[i]),
                _fmt(traj.int_erg_num[i]),
                _fmt(traj.int_vel[i]),
            ]
        )
        lines.append(",".join(row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _hypotheses_block(exp: ExperimentConfig) -> dict:
    try:
        report = check_strong_convergence_hypotheses(
            exp.schedule,
            exp.dynamics.alpha,
            exp.dynamics.beta,
            a=exp.cond_a_constant,
            c=exp.growth_constant,
        )
        return report.to_dict()
    except ValueError as exc:
        return {"error": str(exc)}


def _diagnostics_block(exp: ExperimentConfig, traj: Trajectory, w_series: np.ndarray) -> dict:
    obj, s, dyn = exp.objective, exp.schedule, exp.dynamics
    out: dict = {}
    if "W" in exp.reports:
        mono = diag.monotonicity_check(np.column_stack([traj.t, w_series]), tol=1e-8)
        out["W"] = {
            "initial": float(w_series[0]),
            "final": float(w_series[-1]),
            "monotonicity": mono.to_dict(),
        }
    if "hypotheses" in exp.reports:
        out["hypotheses"] = _hypotheses_block(exp)
    if "rates" in exp.reports:
        try:
            out["rates"] = diag.rate_report(traj, obj, s, dyn).to_dict()
        except ValueError as exc:
            out["rates"] = {"error": str(exc)}
    if "ergodic" in exp.reports:
        try:
            times, values = diag.ergodic_deviation(traj)
            out["ergodic"] = {"times": times.tolist(), "values": values.tolist()}
        except ValueError as exc:
            out["ergodic"] = {"refused": str(exc)}
    xstar = obj.min_norm_solution
    if "Eb" in exp.reports:
        try:
            b = exp.energy_b if exp.energy_b is not None else diag.default_energy_index(dyn.alpha)
            params = diag.EnergyParams(b=b, xstar=xstar)
            values = diag.energy_Eb_series(obj, s, dyn, params, traj)
            out["Eb"] = {"b": b, "times": traj.t.tolist(), "values": values.tolist()}
        except ValueError as exc:
            out["Eb"] = {"error": str(exc)}
    if "Ebp" in exp.reports:
        try:
            params = diag.strong_convergence_energy_params(dyn.alpha, xstar)
            if exp.energy_p is not None:
                params = diag.EnergyParams(b=params.b, p=exp.energy_p, xstar=xstar)
            values = [
                diag.energy_Ebp(obj, s, dyn, params, traj.sample(i))
                for i in range(traj.n_samples)
            ]
            out["Ebp"] = {
                "b": params.b,
                "p": params.p,
                "times": traj.t.tolist(),
                "values": values,
            }
        except ValueError as exc:
            out["Ebp"] = {"error": str(exc)}
    if "tikhonov_curve" in exp.reports:
        entries = []
        for e in exp.eps_grid:
            try:
                x_eps = diag.tikhonov_point(obj, e)
                grad = np.asarray(obj.gradient(x_eps)) + e * x_eps
                entries.append(
                    {
                        "eps": e,
                        "x": x_eps.tolist(),
                        "norm": float(np.linalg.norm(x_eps)),
                        "residual": float(np.linalg.norm(grad)),
                    }
                )
            except diag.SolverError as exc:
                entries.append({"eps": e, "error": str(exc), "residual": exc.residual})
        out["tikhonov_curve"] = {
            "points": entries,
            "xstar_norm": float(np.linalg.norm(xstar)) if xstar is not None else None,
        }
    return out


def _summary_block(traj: Trajectory) -> dict:
    x_norms = np.linalg.norm(traj.x, axis=1)
    return {
        "final_t": float(traj.t[-1]),
        "final_x": traj.x[-1].tolist(),
        "final_gap": float(traj.gap[-1]),
        "final_grad_norm": float(traj.grad_norm[-1]),
        "min_x_norm": float(np.min(x_norms)),
        "samples": traj.n_samples,
    }


def run_experiment(exp: ExperimentConfig) -> tuple[Path, Trajectory]:
    """Integrate and write trajectory.csv, report.json and manifest.json."""
    run_dir = exp.out_dir / exp.label
    obj, s, dyn = exp.objective, exp.schedule, exp.dynamics
    try:
        traj = integrate(obj, s, dyn)
    except IntegrationError as exc:
        run_dir.mkdir(parents=True, exist_ok=True)
        _write_json(run_dir / "manifest.json", exp.resolved)
        if exc.partial is not None:
            w_partial = diag.energy_W_series(obj, s, exc.partial)
            write_trajectory_csv(run_dir / "trajectory.csv", exc.partial, w_partial)
        raise
    run_dir.mkdir(parents=True, exist_ok=True)
    w_series = diag.energy_W_series(obj, s, traj)
    write_trajectory_csv(run_dir / "trajectory.csv", traj, w_series)
    report = {
        "label": exp.label,
        "config": exp.resolved,
        "problem": {
            "name": exp.problem_name,
            "dimension": obj.dimension,
            "min_value": obj.min_value,
            "min_norm_solution": None
            if obj.min_norm_solution is None
            else obj.min_norm_solution.tolist(),
        },
        "integrator": traj.meta.get("stats", {}),
        "summary": _summary_block(traj),
        "diagnostics": _diagnostics_block(exp, traj, w_series),
    }
    _write_json(run_dir / "report.json", report)
    _write_json(run_dir / "manifest.json", exp.resolved)
    return run_dir, traj


def _variant(exp: ExperimentConfig, label: str, schedule_keys: dict) -> ExperimentConfig:
    data = {
        k: v
        for k, v in exp.resolved.items()
        if not k.startswith("schedule.") and k not in ("label", "output.dir")
    }
    data.update(schedule_keys)
    data["label"] = label
    data["output.dir"] = str(exp.out_dir / exp.label)
    return resolve(data)


def compare_experiment(exp: ExperimentConfig, gammas: Sequence[float]) -> Path:
    """Run the zero schedule plus power(gamma) for each gamma, shared dynamics."""
    if not gammas:
        raise ConfigError("compare needs a nonempty gamma list")
    base_scale = exp.resolved.get("schedule.scale", 1.0)
    variants = [("zero", {"schedule.kind": "zero"})]
    for g in gammas:
        variants.append(
            (
                "gamma_%g" % g,
                {"schedule.kind": "power", "schedule.gamma": float(g), "schedule.scale": base_scale},
            )
        )
    rows = []
    top = exp.out_dir / exp.label
    for name, keys in variants:
        sub = _variant(exp, name, keys)
        _, traj = run_experiment(sub)
        x_norms = np.linalg.norm(traj.x, axis=1)
        gamma_val = keys.get("schedule.gamma", float("nan"))
        rows.append(
            [name, gamma_val, float(traj.gap[-1]), float(np.min(x_norms))]
            + [float(v) for v in traj.x[-1]]
        )
    d = exp.objective.dimension
    header = ["run", "gamma", "final_gap", "min_x_norm"] + [f"final_x_{i}" for i in range(d)]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join([row[0]] + [_fmt(v) for v in row[1:]]))
    (top / "comparison.csv").write_text("\n".join(lines) + "\n")
    return top


def _extended_times(exp: ExperimentConfig, dyn) -> np.ndarray:
    """Sample grid extended past the horizon (same spacing) for crossing searches."""
    ts = sample_times(dyn)
    if ts.shape[0] < 2:
        return ts
    if dyn.sample_spacing == "logarithmic":
        ratio = (dyn.horizon / dyn.t0) ** (1.0 / (dyn.sample_count - 1))
        ratio = max(ratio, 1.0 + 1e-6)
        n_ext = int(np.log(1e45 / dyn.horizon) / np.log(ratio)) + 1
        ext = dyn.horizon * ratio ** np.arange(1, n_ext + 1)
    else:
        step = ts[-1] - ts[-2]
        ext = dyn.horizon + step * np.arange(1, 200_001)
    if exp.schedule.kind == "tabulated":
        ext = ext[ext <= exp.schedule.grid_t[-1]]
    return np.concatenate([ts, ext])


def sweep_experiment(
    exp: ExperimentConfig,
    alphas: Sequence[float],
    betas: Sequence[float],
    gammas: Sequence[float],
) -> Path:
    """Cartesian-product runs over (alpha, beta, gamma) with a crossing-time summary."""
    if not alphas or not betas or not gammas:
        raise ConfigError("sweep needs nonempty alpha, beta and gamma grids")
    top = exp.out_dir / exp.label
    rows = []
    for alpha in alphas:
        for beta in betas:
            for gamma in gammas:
                name = "alpha_%g__beta_%g__gamma_%g" % (alpha, beta, gamma)
                data = {
                    k: v
                    for k, v in exp.resolved.items()
                    if not k.startswith("schedule.") and k not in ("label", "output.dir")
                }
                data.update(
                    {
                        "label": name,
                        "output.dir": str(top),
                        "schedule.kind": "power",
                        "schedule.gamma": float(gamma),
                        "schedule.scale": exp.resolved.get("schedule.scale", 1.0),
                        "dynamics.alpha": float(alpha),
                        "dynamics.beta": float(beta),
                    }
                )
                sub = resolve(data)
                _, traj = run_experiment(sub)
                bound = t2eps_threshold(float(alpha), float(beta), exp.growth_constant)
                grid = _extended_times(sub, sub.dynamics)
                t_cross = crossing_time_on_grid(sub.schedule, bound, grid)
                rows.append(
                    {
                        "alpha": float(alpha),
                        "beta": float(beta),
                        "gamma": float(gamma),
                        "threshold": bound,
                        "t_cross": float("nan") if t_cross is None else t_cross,
                        "within_horizon": bool(t_cross is not None and t_cross <= sub.dynamics.horizon),
                        "final_gap": float(traj.gap[-1]),
                        "min_x_norm": float(np.min(np.linalg.norm(traj.x, axis=1))),
                    }
                )
    header = ["alpha", "beta", "gamma", "threshold", "t_cross", "within_horizon", "final_gap", "min_x_norm"]
    lines = [",".join(header)]
    for r in rows:
        lines.append(
            ",".join(
                [_fmt(r["alpha"]), _fmt(r["beta"]), _fmt(r["gamma"]), _fmt(r["threshold"]),
                 _fmt(r["t_cross"]), "1" if r["within_horizon"] else "0",
                 _fmt(r["final_gap"]), _fmt(r["min_x_norm"])]
            )
        )
    (top / "sweep_summary.csv").write_text("\n".join(lines) + "\n")
    return top


def check_schedule_experiment(exp: ExperimentConfig) -> Path:
    """Hypothesis verdicts only; no integration."""
    run_dir = exp.out_dir / exp.label
    run_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "label": exp.label,
        "config": exp.resolved,
        "hypotheses": _hypotheses_block(exp),
    }
    _write_json(run_dir / "report.json", payload)
    return run_dir


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tikhoflow",
        description="Inertial gradient flow with Hessian damping and vanishing Tikhonov regularization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="config file (key = value lines, or a manifest .json)")
        p.add_argument("--out", default=None, help="override the output directory")
        p.add_argument(
            "--seedless",
            action="store_true",
            help="reserved flag: runs are deterministic and use no randomness",
        )

    common(sub.add_parser("run", help="single experiment"))
    p_cmp = sub.add_parser("compare", help="zero schedule vs power-law decays")
    common(p_cmp)
    p_cmp.add_argument("--gammas", type=float, nargs="+", required=True)
    p_sweep = sub.add_parser("sweep", help="grid over alpha, beta, gamma")
    common(p_sweep)
    p_sweep.add_argument("--alpha", type=float, nargs="+", default=None)
    p_sweep.add_argument("--beta", type=float, nargs="+", default=None)
    p_sweep.add_argument("--gamma", type=float, nargs="+", default=None)
    common(sub.add_parser("check-schedule", help="hypothesis verdicts only"))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        data = load_config(args.config)
        exp = resolve(data, out_override=args.out)
        if args.command == "run":
            run_experiment(exp)
        elif args.command == "compare":
            compare_experiment(exp, args.gammas)
        elif args.command == "sweep":
            alphas = args.alpha if args.alpha else [exp.dynamics.alpha]
            betas = args.beta if args.beta else [exp.dynamics.beta]
            gammas = args.gamma if args.gamma else (
                [exp.schedule.gamma] if exp.schedule.kind == "power" else []
            )
            sweep_experiment(exp, alphas, betas, gammas)
        elif args.command == "check-schedule":
            check_schedule_experiment(exp)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
