"""Polynomial approximation from equispaced samples via scaled Legendre frames.

Lazy re-exports keep this package import light so the CLI can configure the
BLAS thread pool before numpy loads.
"""

__version__ = "0.1.0"

_EXPORTS = {
    "numerics": [
        "NumericalError", "EquispacedGrid", "QuadratureRule", "equispaced_grid",
        "legendre_eval", "legendre_deriv_eval", "chebyshev_eval", "gauss_legendre",
        "discrete_norms",
    ],
    "frame": [
        "FrameSpec", "SvdFactors", "RegularizedFit", "SingularPolynomials",
        "frame_row", "frame_matrix", "assemble", "svd", "fit", "evaluate",
        "errors_on_fine_grid", "condition_numbers", "condition_number_l2",
        "singular_polynomials", "scaling_m_of_n", "epsilon_prime",
    ],
    "extremal": [
        "ExtremalResult", "MarkovReport", "BestApproxReport", "ChebyshevExpansion",
        "bmn_oracle", "cmn_lower_bound", "schaeffer_duffin", "markov_check",
        "lemma_t_check", "chebyshev_truncation", "fit_decay_rate",
    ],
    "functions": [
        "TestFunction", "registry", "lookup", "osc", "tau_of_gamma", "breakpoint",
        "rho_rate", "resolution_point", "bernstein_ellipse_sup",
    ],
    "sweeps": [
        "SweepRecord", "CSV_HEADER", "sweep_error_vs_n", "sweep_fig4",
        "render_csv", "emit_csv", "parse_csv",
    ],
    "figures": ["FIGURES", "run_figure"],
}

_ORIGIN = {name: module for module, names in _EXPORTS.items() for name in names}

__all__ = sorted(_ORIGIN)


def __getattr__(name):
    module = _ORIGIN.get(name)
    if module is None:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
    import importlib

    value = getattr(importlib.import_module(f".{module}", __name__), name)
    globals()[name] = value
    return value


def __dir__():
    return __all__ + ["__version__"]
