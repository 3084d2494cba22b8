"""CSV pipelines reproducing the four experiment figures at desk or paper scale."""

from __future__ import annotations

import math
import os

from .functions import breakpoint, lookup, osc, resolution_point, tau_of_gamma
from .sweeps import emit_csv, sweep_error_vs_n, sweep_fig4

__all__ = ["FIGURES", "run_figure"]

FIGURES = ("fig1", "fig2", "fig3", "fig4")

# eta values are an artifact choice (spanning under- to well-oversampled);
# they travel in the CSV metadata
FIG1_ETAS = (2.0, 4.0, 8.0)
FIG1_GAMMAS = (1.2, 1.4, 1.8)
FIG1_EPSILONS = (1e-14, 1e-10, 1e-6)

FIG2_FUNCTIONS = ("fig2_f1", "fig2_f2", "fig2_f3")
FIG2_GAMMAS = (1.25, 1.5, 2.0)
FIG2_EPSILONS = (1e-14, 1e-10, 1e-6)

FIG3_GAMMAS = (1.25, 1.5, 2.0)
FIG3_EPSILONS = (1e-12, 1e-6)

FIG4_KAPPA_STAR = 100.0
FIG4_GAMMA = 1.25
FIG4_EPSILON = 1e-14
FIG4_OSC_THETA = 2.0   # stand-in theta for the entire oscillation in varying mode


def _num(x: float) -> str:
    return f"{x:g}"


def _write(records, metadata, out_dir, name, paths):
    path = os.path.join(out_dir, name)
    emit_csv(records, path, metadata)
    paths.append(path)


def _fig1(scale: str, out_dir: str, fine_grid: int, paths: list[str]) -> None:
    n_list = range(10, 101, 10) if scale == "desk" else range(10, 201, 5)
    func = lookup("runge1")
    for gamma in FIG1_GAMMAS:
        for eps in FIG1_EPSILONS:
            records = []
            for eta in FIG1_ETAS:
                records += sweep_error_vs_n(func, gamma, eps, eta, n_list, fine_grid)
            meta = {
                "figure": "fig1", "scale": scale, "function": func.name,
                "gamma": gamma, "epsilon": eps, "etas": list(FIG1_ETAS),
                "theta": func.theta_star, "fine_grid": fine_grid,
            }
            _write(records, meta, out_dir,
                   f"fig1_gamma{_num(gamma)}_eps{_num(eps)}.csv", paths)


def _fig2(scale: str, out_dir: str, fine_grid: int, paths: list[str]) -> None:
    n_list = range(4, 81, 4) if scale == "desk" else range(4, 161, 4)
    eta = 4.0
    for name in FIG2_FUNCTIONS:
        func = lookup(name)
        for gamma in FIG2_GAMMAS:
            records = []
            breakpoints = {}
            for eps in FIG2_EPSILONS:
                records += sweep_error_vs_n(func, gamma, eps, eta, n_list, fine_grid)
                if 1.0 < func.theta_star < tau_of_gamma(gamma):
                    breakpoints[_num(eps)] = breakpoint(eps, func.theta_star, gamma)
            meta = {
                "figure": "fig2", "scale": scale, "function": name, "gamma": gamma,
                "eta": eta, "epsilons": list(FIG2_EPSILONS), "theta": func.theta_star,
                "tau": tau_of_gamma(gamma), "breakpoints": breakpoints,
                "fine_grid": fine_grid,
            }
            _write(records, meta, out_dir, f"fig2_{name}_gamma{_num(gamma)}.csv", paths)


def _fig3(scale: str, out_dir: str, fine_grid: int, paths: list[str]) -> None:
    # paper frequencies need n in the hundreds; desk halves them for runtime
    omegas = (10.0, 20.0) if scale == "desk" else (40.0, 60.0, 80.0)
    eta = 4.0
    for omega in omegas:
        for gamma in FIG3_GAMMAS:
            func = osc(omega)
            n0 = resolution_point(omega, gamma)
            top = int(math.ceil(1.35 * n0))
            step = max(2, int(round(top / 20)))
            n_list = range(step, top + 1, step)
            records = []
            for eps in FIG3_EPSILONS:
                records += sweep_error_vs_n(func, gamma, eps, eta, n_list, fine_grid)
            meta = {
                "figure": "fig3", "scale": scale, "function": func.name, "omega": omega,
                "gamma": gamma, "eta": eta, "epsilons": list(FIG3_EPSILONS),
                "n0": n0, "fine_grid": fine_grid,
            }
            _write(records, meta, out_dir,
                   f"fig3_omega{_num(omega)}_gamma{_num(gamma)}.csv", paths)


def _fig4(scale: str, out_dir: str, fine_grid: int, paths: list[str]) -> None:
    n_list = range(4, 61, 4) if scale == "desk" else range(8, 201, 8)
    names = ("fig4_f1", "fig4_f2", "osc10" if scale == "desk" else "osc40")
    for name in names:
        func = lookup(name)
        theta = func.theta_star if math.isfinite(func.theta_star) else FIG4_OSC_THETA
        for mode in ("pls", "fixed", "varying"):
            records = sweep_fig4(func, FIG4_GAMMA, mode, FIG4_KAPPA_STAR, n_list,
                                 epsilon=FIG4_EPSILON, theta=theta, fine_grid=fine_grid)
            meta = {
                "figure": "fig4", "scale": scale, "function": name, "mode": mode,
                "kappa_star": FIG4_KAPPA_STAR, "gamma": 1.0 if mode == "pls" else FIG4_GAMMA,
                "epsilon": FIG4_EPSILON, "theta": theta, "fine_grid": fine_grid,
            }
            _write(records, meta, out_dir, f"fig4_{name}_{mode}.csv", paths)


def run_figure(figure: str, scale: str = "desk", out_dir: str = ".",
               fine_grid: int = 50000) -> list[str]:
    """Run one figure pipeline, writing its CSV files into out_dir.

    Returns the written paths.  scale "desk" keeps degree ranges small enough
    for interactive runs; "paper" uses the published parameter ranges.
    """
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}; expected one of {FIGURES}")
    if scale not in ("desk", "paper"):
        raise ValueError(f"unknown scale {scale!r}")
    os.makedirs(out_dir, exist_ok=True)
    paths: list[str] = []
    {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4}[figure](
        scale, out_dir, fine_grid, paths)
    return paths
