"""Experiment sweeps over the degree n, and the CSV layer that records them."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .frame import (FrameSpec, condition_number_l2, condition_numbers, epsilon_prime,
                    errors_on_fine_grid, fit, scaling_m_of_n)
from .functions import TestFunction
from .numerics import NumericalError, equispaced_grid

__all__ = [
    "SweepRecord",
    "CSV_HEADER",
    "sweep_error_vs_n",
    "sweep_fig4",
    "render_csv",
    "emit_csv",
    "parse_csv",
]

CSV_HEADER = ("function", "n", "m", "gamma", "epsilon", "eta",
              "error_inf", "error_l2", "cond_2", "cond_inf", "flag")

PAPER_SCALING = "paper"
DEFAULT_FIG4_M_MAX = 20000
EPS_FLOOR = 1e-14   # floor for the varying-threshold scheme


@dataclass(frozen=True)
class SweepRecord:
    """One row of an experiment.

    epsilon records the truncation threshold actually applied to the fit
    (for the paper-scaling mode that is the degree-adjusted value); failed
    records carry zeros in the metric fields and a nonempty flag.
    """

    function: str
    n: int
    m: int
    gamma: float
    epsilon: float
    eta: float
    error_inf: float
    error_l2: float
    cond_2: float
    cond_inf: float
    flag: str = ""


def _noisy(samples: np.ndarray, noise: float, rng: np.random.Generator) -> np.ndarray:
    if noise == 0.0:
        return samples
    return samples + rng.uniform(-noise, noise, samples.shape)


def _one_record(func: TestFunction, spec: FrameSpec, m: int, trunc: float, eta: float,
                fine_grid: int, noise: float, rng: np.random.Generator) -> SweepRecord:
    grid = equispaced_grid(m)
    samples = _noisy(np.asarray(func.eval(grid.nodes)), noise, rng)
    rfit = fit(spec, m, trunc, samples)
    err_inf, err_l2 = errors_on_fine_grid(rfit, func, fine_grid)
    cond_2, cond_inf = condition_numbers(spec, m, trunc, fine_grid)
    return SweepRecord(function=func.name, n=spec.n, m=m, gamma=spec.gamma,
                       epsilon=trunc, eta=eta, error_inf=err_inf, error_l2=err_l2,
                       cond_2=cond_2, cond_inf=cond_inf)


def _failed_record(func, n, m, gamma, trunc, eta, exc) -> SweepRecord:
    return SweepRecord(function=func.name, n=n, m=m, gamma=gamma, epsilon=trunc,
                       eta=eta, error_inf=0.0, error_l2=0.0, cond_2=0.0, cond_inf=0.0,
                       flag=f"numerical_failure:{exc}")


def sweep_error_vs_n(func: TestFunction, gamma: float, epsilon: float, eta_or_scaling,
                     n_list, fine_grid: int = 50000, noise: float = 0.0,
                     noise_seed: int = 0) -> list[SweepRecord]:
    """Error and conditioning versus degree at fixed oversampling.

    eta_or_scaling is either the oversampling ratio eta (m = ceil(eta * n),
    truncation at epsilon) or the string "paper" (m from the linear-oversampling
    rule, truncation at the degree-adjusted threshold).  Numerical failures are
    flagged per record without aborting the sweep.  noise adds uniform
    perturbations of that amplitude to the samples.
    """
    rng = np.random.default_rng(noise_seed)
    records = []
    for n in n_list:
        if eta_or_scaling == PAPER_SCALING:
            m = scaling_m_of_n(n, epsilon, gamma)
            trunc = epsilon_prime(epsilon, n, gamma)
        else:
            eta = float(eta_or_scaling)
            if eta < 1.0:
                raise ValueError("oversampling ratio eta must be >= 1")
            m = math.ceil(eta * n)
            trunc = epsilon
        m = max(m, 1)
        spec = FrameSpec(gamma=gamma, n=n)
        try:
            records.append(_one_record(func, spec, m, trunc, m / n, fine_grid, noise, rng))
        except NumericalError as exc:
            records.append(_failed_record(func, n, m, gamma, trunc, m / n, exc))
    return records


def _smallest_stable_m(spec: FrameSpec, trunc: float, kappa_star: float, fine_grid: int,
                       m_max: int, n: int) -> int | None:
    """Smallest m >= n with cond_2 <= kappa_star, assuming kappa nonincreasing in m.

    Doubling bracket plus bisection; a verification pass checks the left
    endpoint and falls back to a linear scan if the monotonicity assumption
    fails at the boundary.
    """
    cache: dict[int, float] = {}

    def kappa(m: int) -> float:
        if m not in cache:
            cache[m] = condition_number_l2(spec, m, trunc, fine_grid)
        return cache[m]

    lo = None
    m = max(n, 1)
    while True:
        if kappa(m) <= kappa_star:
            hi = m
            break
        lo = m
        if m >= m_max:
            return None
        m = min(2 * m, m_max)
    if lo is not None:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if kappa(mid) <= kappa_star:
                hi = mid
            else:
                lo = mid
    if hi > max(n, 1) and kappa(hi - 1) <= kappa_star:
        # non-monotone boundary: scan up from n for the true first crossing
        for m in range(max(n, 1), hi):
            if kappa(m) <= kappa_star:
                return m
    return hi


def sweep_fig4(func: TestFunction, gamma: float, mode: str, kappa_star: float, n_list,
               epsilon: float = EPS_FLOOR, theta: float | None = None,
               fine_grid: int = 50000, m_max: int = DEFAULT_FIG4_M_MAX) -> list[SweepRecord]:
    """Scaling experiment: per degree, the smallest sample count meeting a conditioning cap.

    mode is one of
      "fixed"   - truncation at the given epsilon,
      "varying" - truncation at max(theta^-n, 1e-14), needs theta,
      "pls"     - plain least squares on [-1, 1] (gamma = 1, no truncation).
    For each n the smallest m >= n with cond_2 <= kappa_star is found (records
    are flagged "unsatisfiable" if no m <= m_max qualifies), then errors and
    condition numbers are recorded at that m.
    """
    if kappa_star <= 1.0:
        raise ValueError("kappa_star must exceed 1 (any projection reproducing constants has kappa >= 1)")
    if mode not in ("fixed", "varying", "pls"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "varying" and theta is None:
        raise ValueError("varying mode needs theta")
    g = 1.0 if mode == "pls" else gamma
    records = []
    rng = np.random.default_rng(0)
    for n in n_list:
        if mode == "fixed":
            trunc = epsilon
        elif mode == "varying":
            trunc = max(theta ** (-n), EPS_FLOOR)
        else:
            trunc = 0.0
        spec = FrameSpec(gamma=g, n=n)
        try:
            m_star = _smallest_stable_m(spec, trunc, kappa_star, fine_grid, m_max, n)
            if m_star is None:
                records.append(SweepRecord(function=func.name, n=n, m=m_max, gamma=g,
                                           epsilon=trunc, eta=m_max / n, error_inf=0.0,
                                           error_l2=0.0, cond_2=0.0, cond_inf=0.0,
                                           flag="unsatisfiable"))
                continue
            records.append(_one_record(func, spec, m_star, trunc, m_star / n,
                                       fine_grid, 0.0, rng))
        except NumericalError as exc:
            records.append(_failed_record(func, n, 0, g, trunc, 0.0, exc))
    return records


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _sort_key(r: SweepRecord):
    return (r.function, r.gamma, r.epsilon, r.n, r.eta, r.m)


def render_csv(records, metadata: dict | None = None) -> str:
    """CSV text: optional '# key = value' metadata lines, header, sorted rows."""
    lines = []
    for key, value in (metadata or {}).items():
        lines.append(f"# {key} = {json.dumps(value)}")
    lines.append(",".join(CSV_HEADER))
    for r in sorted(records, key=_sort_key):
        lines.append(",".join([
            r.function, str(r.n), str(r.m), _fmt(r.gamma), _fmt(r.epsilon), _fmt(r.eta),
            _fmt(r.error_inf), _fmt(r.error_l2), _fmt(r.cond_2), _fmt(r.cond_inf), r.flag,
        ]))
    return "\n".join(lines) + "\n"


def emit_csv(records, path, metadata: dict | None = None) -> None:
    """Write records to path as UTF-8 CSV (17 significant digits per float)."""
    text = render_csv(records, metadata)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path!r}: {exc}") from exc


def parse_csv(path) -> tuple[list[SweepRecord], dict]:
    """Read back an emitted CSV; returns (records, metadata)."""
    records: list[SweepRecord] = []
    metadata: dict = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"cannot read sweep CSV from {path!r}: {exc}") from exc
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            metadata[key.strip()] = json.loads(value.strip())
        elif line:
            body.append(line)
    if not body or body[0] != ",".join(CSV_HEADER):
        raise ValueError(f"{path!r} does not carry the expected sweep header")
    for line in body[1:]:
        parts = line.split(",")
        if len(parts) != len(CSV_HEADER):
            raise ValueError(f"malformed row in {path!r}: {line!r}")
        records.append(SweepRecord(
            function=parts[0], n=int(parts[1]), m=int(parts[2]), gamma=float(parts[3]),
            epsilon=float(parts[4]), eta=float(parts[5]), error_inf=float(parts[6]),
            error_l2=float(parts[7]), cond_2=float(parts[8]), cond_inf=float(parts[9]),
            flag=parts[10],
        ))
    return records, metadata
