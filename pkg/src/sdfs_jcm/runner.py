"""Executes a RunConfig: time sweeps, grids, CSV output, residual summary.

One CSV per selected observable, with fixed schemas:

    inversion.csv   lambda_t,W
    entropy.csv     lambda_t,S_f,lambda_plus,lambda_minus
    photon_dist.csv lambda_t,n,P
    phase_dist.csv  lambda_t,eta,P
    qfunc.csv       x,y,Q

Floats are written with 17 significant digits and '\\n' line endings, so
identical configurations produce byte-identical files. A run summary
(run_summary.txt) records the truncation, the worst invariant residuals
and the wall time; any residual beyond its tolerance marks the run
failed, which the CLI turns into a nonzero exit status.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import RunConfig, validate
from .dynamics import JcmConfig, conservation_residual, evolve, field_density
from .observables import (
    atomic_inversion,
    default_etas,
    field_entropy,
    gram,
    phase_distribution,
    photon_number_distribution,
    q_function_grid,
)
from .sdfs import choose_truncation, sdfs_state

FLOAT_FMT = "%.17g"

TOLERANCES = {
    "normalization_residual": 1e-10,
    "conservation_residual": 1e-10,
    "gram_trace_residual": 1e-10,
    "eigenvalue_sum_residual": 1e-10,
    "phase_integral_residual": 1e-6,
    "q_integral_residual": 1e-3,
}


@dataclass(frozen=True)
class RunResult:
    ok: bool
    summary: dict
    files: tuple[Path, ...]


def _write_csv(path: Path, header: str, columns: list[np.ndarray], fmts: list[str]):
    data = np.column_stack(columns)
    with open(path, "w", newline="\n") as handle:
        handle.write(header + "\n")
        np.savetxt(handle, data, fmt=fmts, delimiter=",", newline="\n")


def run(cfg: RunConfig) -> RunResult:
    """Execute the configured sweep and write outputs into cfg.output_dir."""
    validate(cfg)
    started = time.perf_counter()
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    n_max = max(choose_truncation(cfg.state, cfg.tail_tol), 1)
    q = sdfs_state(cfg.state, n_max)
    jcm = JcmConfig(
        n_max=n_max, coupling=cfg.coupling, detuning_ratio=cfg.detuning_ratio
    )
    ts = np.linspace(0.0, cfg.t_max_scaled, cfg.t_points)

    residuals: dict[str, float] = {
        "normalization_residual": abs(q.norm_sq() - 1.0),
    }
    files: list[Path] = []
    selected = set(cfg.observables)
    sweep_needed = selected & {"inversion", "entropy", "photon_dist", "phase_dist"}

    inversion_vals = np.empty(cfg.t_points) if "inversion" in selected else None
    entropy_rows = np.empty((cfg.t_points, 3)) if "entropy" in selected else None
    photon_rows = (
        np.empty((cfg.t_points, n_max + 2)) if "photon_dist" in selected else None
    )
    etas = default_etas(cfg.eta_points)
    phase_rows = (
        np.empty((cfg.t_points, cfg.eta_points)) if "phase_dist" in selected else None
    )

    if sweep_needed:
        worst_cons = 0.0
        worst_trace = 0.0
        worst_phase = 0.0
        for i, t in enumerate(ts):
            st = evolve(q, float(t), jcm)
            worst_cons = max(worst_cons, conservation_residual(st))
            if inversion_vals is not None:
                inversion_vals[i] = atomic_inversion(st)
            if entropy_rows is not None or photon_rows is not None:
                fd = field_density(st)
                if entropy_rows is not None:
                    g = gram(fd)
                    worst_trace = max(worst_trace, abs(g.cc + g.ss - 1.0))
                    ent = field_entropy(g)
                    entropy_rows[i] = (ent.entropy, ent.lambda_plus, ent.lambda_minus)
                if photon_rows is not None:
                    photon_rows[i] = photon_number_distribution(fd)
            if phase_rows is not None:
                dist = phase_distribution(st, etas)
                phase_rows[i] = dist.values
                integral = float(np.sum(dist.values)) * (2.0 * math.pi / cfg.eta_points)
                worst_phase = max(worst_phase, abs(integral - 1.0))
        residuals["conservation_residual"] = worst_cons
        if entropy_rows is not None:
            residuals["gram_trace_residual"] = worst_trace
            lam_sums = entropy_rows[:, 1] + entropy_rows[:, 2]
            residuals["eigenvalue_sum_residual"] = float(
                np.max(np.abs(lam_sums - 1.0))
            )
        if phase_rows is not None:
            residuals["phase_integral_residual"] = worst_phase

    if inversion_vals is not None:
        path = out_dir / "inversion.csv"
        _write_csv(path, "lambda_t,W", [ts, inversion_vals], [FLOAT_FMT] * 2)
        files.append(path)
    if entropy_rows is not None:
        path = out_dir / "entropy.csv"
        _write_csv(
            path,
            "lambda_t,S_f,lambda_plus,lambda_minus",
            [ts, entropy_rows[:, 0], entropy_rows[:, 1], entropy_rows[:, 2]],
            [FLOAT_FMT] * 4,
        )
        files.append(path)
    if photon_rows is not None:
        path = out_dir / "photon_dist.csv"
        ns = np.arange(n_max + 2)
        _write_csv(
            path,
            "lambda_t,n,P",
            [
                np.repeat(ts, ns.size),
                np.tile(ns, ts.size),
                photon_rows.ravel(),
            ],
            [FLOAT_FMT, "%d", FLOAT_FMT],
        )
        files.append(path)
    if phase_rows is not None:
        path = out_dir / "phase_dist.csv"
        _write_csv(
            path,
            "lambda_t,eta,P",
            [
                np.repeat(ts, etas.size),
                np.tile(etas, ts.size),
                phase_rows.ravel(),
            ],
            [FLOAT_FMT] * 3,
        )
        files.append(path)

    if "qfunc" in selected:
        t_q = cfg.q_time_scaled if cfg.q_time_scaled is not None else cfg.t_max_scaled
        st = evolve(q, float(t_q), jcm)
        residuals["conservation_residual"] = max(
            residuals.get("conservation_residual", 0.0), conservation_residual(st)
        )
        grid = cfg.q_grid
        xs = np.linspace(grid.x_min, grid.x_max, grid.nx)
        ys = np.linspace(grid.y_min, grid.y_max, grid.ny)
        qg = q_function_grid(st, xs, ys)
        cell = (xs[1] - xs[0]) * (ys[1] - ys[0])
        residuals["q_integral_residual"] = abs(float(np.sum(qg.values)) * cell - 1.0)
        path = out_dir / "qfunc.csv"
        _write_csv(
            path,
            "x,y,Q",
            [
                np.tile(xs, ys.size),
                np.repeat(ys, xs.size),
                qg.values.ravel(),
            ],
            [FLOAT_FMT] * 3,
        )
        files.append(path)

    failures = sorted(
        name for name, value in residuals.items() if value > TOLERANCES[name]
    )
    ok = not failures
    summary = {
        "n_max": n_max,
        "dim": n_max + 1,
        "t_points": cfg.t_points,
        **{name: residuals[name] for name in sorted(residuals)},
        "wall_time_s": time.perf_counter() - started,
        "status": "ok" if ok else "invariant-failure: " + ", ".join(failures),
    }
    with open(out_dir / "run_summary.txt", "w", newline="\n") as handle:
        for key, value in summary.items():
            handle.write(f"{key} = {value}\n")
    return RunResult(ok, summary, tuple(files))
