#!/usr/bin/env python3
"""Render the experiment figures from the sweep CSVs.

Reads the CSV dialect written by the `framex figure` subcommands (comment
lines `# key = json-value`, a fixed header, 17-digit floats) and renders one
multi-panel image per figure: error-versus-degree panels on a log axis with
dashed rate lines theta^-n, dot-dashed breakpoint levels, resolution markers
at pi*gamma*omega, and the sample-count scaling panels.

Usage:
    render_figures.py --figure {fig1,fig2,fig3,fig4} --csv-dir DIR --out FILE

Rendering depends only on the CSV contents, so identical inputs produce
identical image bytes.
"""

from __future__ import annotations

import argparse
import glob
import json
import math
import os
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

HEADER = ("function", "n", "m", "gamma", "epsilon", "eta",
          "error_inf", "error_l2", "cond_2", "cond_inf", "flag")

SERIES_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple")


class CsvError(RuntimeError):
    pass


def read_sweep_csv(path):
    """Parse one sweep CSV into (rows, metadata); raises CsvError with the path."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CsvError(f"{path}: {exc}") from exc
    metadata, body = {}, []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            try:
                metadata[key.strip()] = json.loads(value.strip())
            except json.JSONDecodeError as exc:
                raise CsvError(f"{path}: bad metadata line {line!r}") from exc
        elif line:
            body.append(line)
    if not body or tuple(body[0].split(",")) != HEADER:
        raise CsvError(f"{path}: missing or wrong header row")
    rows = []
    for line in body[1:]:
        parts = line.split(",")
        if len(parts) != len(HEADER):
            raise CsvError(f"{path}: truncated row {line!r}")
        rows.append({
            "function": parts[0], "n": int(parts[1]), "m": int(parts[2]),
            "gamma": float(parts[3]), "epsilon": float(parts[4]), "eta": float(parts[5]),
            "error_inf": float(parts[6]), "error_l2": float(parts[7]),
            "cond_2": float(parts[8]), "cond_inf": float(parts[9]), "flag": parts[10],
        })
    return rows, metadata


def load_figure_files(figure, csv_dir):
    paths = sorted(glob.glob(os.path.join(csv_dir, f"{figure}_*.csv")))
    if not paths:
        raise CsvError(f"no {figure}_*.csv files found in {csv_dir!r}")
    return [(path,) + read_sweep_csv(path) for path in paths]


def fmt_eps(eps):
    return f"{eps:g}"


def add_legend(ax, fontsize=7):
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize=fontsize)


def style_error_axis(ax, xlabel="n"):
    ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("error")
    ax.grid(True, which="major", alpha=0.3)


def plot_series(ax, rows, key_of, value_key, label_of):
    """Group rows by key_of and draw one line per group; returns the n range."""
    groups = {}
    for row in rows:
        if row["flag"]:
            continue
        groups.setdefault(key_of(row), []).append(row)
    n_all = []
    for idx, key in enumerate(sorted(groups)):
        pts = sorted(groups[key], key=lambda r: r["n"])
        ns = [r["n"] for r in pts]
        ys = [max(r[value_key], 1e-18) for r in pts]
        ax.plot(ns, ys, marker="o", markersize=3, linewidth=1.2,
                color=SERIES_COLORS[idx % len(SERIES_COLORS)], label=label_of(key))
        n_all += ns
    return (min(n_all), max(n_all)) if n_all else None


def draw_rate_line(ax, theta, n_range, anchor=1.0):
    if theta is None or not math.isfinite(theta) or theta <= 1 or n_range is None:
        return
    n0, n1 = n_range
    ns = list(range(int(n0), int(n1) + 1))
    ax.plot(ns, [anchor * theta ** (-n) for n in ns], "k--", linewidth=1.0,
            label=f"{theta:.3g}^-n")


def render_fig1(files, fig):
    gammas = sorted({meta["gamma"] for _, _, meta in files})
    epsilons = sorted({meta["epsilon"] for _, _, meta in files}, reverse=True)
    lattice = {(meta["gamma"], meta["epsilon"]): (rows, meta) for _, rows, meta in files}
    for gamma in gammas:
        for eps in epsilons:
            if (gamma, eps) not in lattice:
                raise CsvError(f"fig1 panel gamma={gamma:g}, eps={eps:g} has no CSV")
    axes = fig.subplots(len(epsilons), len(gammas), squeeze=False)
    for i, eps in enumerate(epsilons):
        for j, gamma in enumerate(gammas):
            ax = axes[i][j]
            rows, meta = lattice[(gamma, eps)]
            n_range = plot_series(ax, rows, lambda r: r["eta"], "error_inf",
                                  lambda eta: f"eta={eta:g}")
            draw_rate_line(ax, meta.get("theta"), n_range)
            style_error_axis(ax)
            ax.set_title(f"gamma={gamma:g}, eps={fmt_eps(eps)}", fontsize=9)
            if i == 0 and j == 0:
                add_legend(ax)


def render_fig2(files, fig):
    functions = sorted({meta["function"] for _, _, meta in files})
    gammas = sorted({meta["gamma"] for _, _, meta in files})
    lattice = {(meta["function"], meta["gamma"]): (rows, meta) for _, rows, meta in files}
    for name in functions:
        for gamma in gammas:
            if (name, gamma) not in lattice:
                raise CsvError(f"fig2 panel {name}, gamma={gamma:g} has no CSV")
    axes = fig.subplots(len(functions), len(gammas), squeeze=False)
    for i, name in enumerate(functions):
        for j, gamma in enumerate(gammas):
            ax = axes[i][j]
            rows, meta = lattice[(name, gamma)]
            n_range = plot_series(ax, rows, lambda r: r["epsilon"], "error_inf",
                                  lambda eps: f"eps={fmt_eps(eps)}")
            draw_rate_line(ax, meta.get("theta"), n_range)
            for level in (meta.get("breakpoints") or {}).values():
                ax.axhline(level, linestyle="-.", color="0.4", linewidth=1.0)
            style_error_axis(ax)
            ax.set_title(f"{name}, gamma={gamma:g}", fontsize=9)
            if i == 0 and j == 0:
                add_legend(ax)


def render_fig3(files, fig):
    omegas = sorted({meta["omega"] for _, _, meta in files})
    gammas = sorted({meta["gamma"] for _, _, meta in files})
    lattice = {(meta["omega"], meta["gamma"]): (rows, meta) for _, rows, meta in files}
    for omega in omegas:
        for gamma in gammas:
            if (omega, gamma) not in lattice:
                raise CsvError(f"fig3 panel omega={omega:g}, gamma={gamma:g} has no CSV")
    axes = fig.subplots(len(omegas), len(gammas), squeeze=False)
    for i, omega in enumerate(omegas):
        for j, gamma in enumerate(gammas):
            ax = axes[i][j]
            rows, meta = lattice[(omega, gamma)]
            plot_series(ax, rows, lambda r: r["epsilon"], "error_inf",
                        lambda eps: f"eps={fmt_eps(eps)}")
            n0 = meta.get("n0")
            if n0 is not None:
                ax.axvline(n0, linestyle=":", color="k", linewidth=1.0,
                           label="pi*gamma*omega")
            style_error_axis(ax)
            ax.set_title(f"omega={omega:g}, gamma={gamma:g}", fontsize=9)
            if i == 0 and j == 0:
                add_legend(ax)


def render_fig4(files, fig):
    functions = sorted({meta["function"] for _, _, meta in files})
    modes = sorted({meta["mode"] for _, _, meta in files})
    lattice = {(meta["function"], meta["mode"]): (rows, meta) for _, rows, meta in files}
    for name in functions:
        for mode in modes:
            if (name, mode) not in lattice:
                raise CsvError(f"fig4 panel {name}, mode={mode} has no CSV")
    axes = fig.subplots(2, len(functions), squeeze=False)
    for j, name in enumerate(functions):
        top, bottom = axes[0][j], axes[1][j]
        for idx, mode in enumerate(modes):
            rows, _ = lattice[(name, mode)]
            pts = sorted((r for r in rows if not r["flag"]), key=lambda r: r["n"])
            color = SERIES_COLORS[idx % len(SERIES_COLORS)]
            top.plot([r["m"] for r in pts], [max(r["error_l2"], 1e-18) for r in pts],
                     marker="o", markersize=3, linewidth=1.2, color=color, label=mode)
            bottom.plot([r["n"] for r in pts], [r["m"] for r in pts], marker="o",
                        markersize=3, linewidth=1.2, color=color, label=mode)
        top.set_yscale("log")
        top.set_xlabel("m")
        top.set_ylabel("error (discrete L2)")
        top.set_title(name, fontsize=9)
        top.grid(True, which="major", alpha=0.3)
        bottom.set_xscale("log")
        bottom.set_yscale("log")
        bottom.set_xlabel("n")
        bottom.set_ylabel("m")
        bottom.grid(True, which="major", alpha=0.3)
        if j == 0:
            add_legend(top)


RENDERERS = {"fig1": render_fig1, "fig2": render_fig2, "fig3": render_fig3,
             "fig4": render_fig4}


def render(figure, csv_dir, out_path, dpi=150, fmt="png"):
    """Render one figure from its CSVs; returns the matplotlib Figure."""
    files = load_figure_files(figure, csv_dir)
    fig = plt.figure(figsize=(11, 9))
    RENDERERS[figure](files, fig)
    fig.tight_layout()
    if fmt == "png":
        # fixed metadata keeps re-renders byte-identical
        fig.savefig(out_path, dpi=dpi, format=fmt, metadata={"Software": "render_figures"})
    else:
        fig.savefig(out_path, dpi=dpi, format=fmt)
    return fig


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--figure", choices=sorted(RENDERERS), required=True)
    parser.add_argument("--csv-dir", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--format", choices=("png", "pdf", "svg"), default="png",
                        help="pdf/svg give vector output")
    args = parser.parse_args(argv)
    try:
        fig = render(args.figure, args.csv_dir, args.out, dpi=args.dpi, fmt=args.format)
        plt.close(fig)
    except CsvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
