"""Named test functions with analyticity metadata, and Bernstein-ellipse analytics."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "TestFunction",
    "registry",
    "lookup",
    "osc",
    "tau_of_gamma",
    "breakpoint",
    "rho_rate",
    "resolution_point",
    "bernstein_ellipse_sup",
]


@dataclass(frozen=True)
class TestFunction:
    """A named evaluator with the metadata that drives the experiments.

    theta_star is the parameter of the largest Bernstein ellipse in which the
    function is analytic (inf for entire functions); omega is the oscillation
    frequency where applicable.  Branch-type functions return complex values on
    the real line rather than failing.  deriv(order, x), when present, returns
    the order-th derivative.
    """

    __test__ = False  # despite the name, not a pytest class

    name: str
    eval: Callable[[np.ndarray], np.ndarray]
    theta_star: float
    omega: Optional[float] = None
    smoothness: str = "analytic"
    deriv: Optional[Callable[[int, np.ndarray], np.ndarray]] = None


def osc(omega: float) -> TestFunction:
    """The oscillation exp(i omega pi x), entire with unit modulus on the real line."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    return TestFunction(
        name=f"osc{omega:g}",
        eval=lambda x, w=omega: np.exp(1j * w * np.pi * np.asarray(x)),
        theta_star=math.inf,
        omega=float(omega),
        smoothness="entire",
    )


def _fixed_registry() -> list[TestFunction]:
    return [
        TestFunction("runge1", lambda x: 1.0 / (1.0 + np.asarray(x) ** 2),
                     theta_star=math.sqrt(2.0) + 1.0),
        TestFunction("fig2_f1", lambda x: 1.0 / (1.0 + 4.0 * np.asarray(x) ** 2),
                     theta_star=(1.0 + math.sqrt(5.0)) / 2.0),
        TestFunction("fig2_f2", lambda x: 1.0 / (10.0 - 9.0 * np.asarray(x)),
                     theta_star=(10.0 + math.sqrt(19.0)) / 9.0),
        TestFunction("fig2_f3",
                     lambda x: 25.0 * np.sqrt(9.0 * np.asarray(x, dtype=complex) ** 2 - 10.0),
                     theta_star=math.sqrt(10.0 / 9.0) + 1.0 / 3.0),
        TestFunction("fig4_f1", lambda x: 1.0 / (1.0 + 16.0 * np.asarray(x) ** 2),
                     theta_star=(math.sqrt(17.0) + 1.0) / 4.0),
        TestFunction("fig4_f2", lambda x: 1.0 / (30.0 - 29.0 * np.asarray(x)),
                     theta_star=(30.0 + math.sqrt(59.0)) / 29.0),
    ]


def registry() -> list[TestFunction]:
    """All named test functions, with osc at its default frequency 40."""
    return _fixed_registry() + [osc(40.0)]


def lookup(name: str, omega: float | None = None) -> TestFunction:
    """Resolve a function by name; 'osc' takes the frequency from omega or the name."""
    for tf in _fixed_registry():
        if tf.name == name:
            return tf
    if name == "osc":
        if omega is None:
            raise ValueError("function 'osc' needs a frequency (omega)")
        return osc(omega)
    match = re.fullmatch(r"osc([0-9.]+)", name)
    if match:
        return osc(float(match.group(1)))
    known = ", ".join(tf.name for tf in _fixed_registry())
    raise ValueError(f"unknown function {name!r} (known: {known}, osc)")


def tau_of_gamma(gamma: float) -> float:
    """Bernstein parameter gamma + sqrt(gamma^2 - 1) of the smallest ellipse containing [-gamma, gamma]."""
    if gamma < 1.0:
        raise ValueError("gamma must be >= 1")
    return gamma + math.sqrt(gamma * gamma - 1.0)


def breakpoint(epsilon: float, theta: float, gamma: float) -> float:
    """Accuracy level eps^(log theta / log tau) where the exponential phase stalls.

    Only meaningful for 1 < theta < tau(gamma); for theta >= tau the error runs
    all the way down to the tolerance and there is no breakpoint above it.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError("need 0 < epsilon < 1")
    tau = tau_of_gamma(gamma)
    if not 1.0 < theta < tau:
        raise ValueError(f"breakpoint needs 1 < theta < tau(gamma) = {tau:.6g}, got theta={theta}")
    return epsilon ** (math.log(theta) / math.log(tau))


def rho_rate(theta: float, epsilon: float, gamma: float) -> float:
    """Per-sample decay rate rho = theta^(sqrt(gamma^2-1) / (36 log(1/eps)))."""
    if theta <= 1.0:
        raise ValueError("need theta > 1")
    if gamma <= 1.0:
        raise ValueError("need gamma > 1")
    if not 0.0 < epsilon <= 1.0 / math.e:
        raise ValueError("need 0 < epsilon <= 1/e")
    c_star = math.sqrt(gamma * gamma - 1.0) / (36.0 * math.log(1.0 / epsilon))
    return theta ** c_star


def resolution_point(omega: float, gamma: float) -> float:
    """Degree pi * gamma * omega at which an oscillation of frequency omega resolves."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if gamma < 1.0:
        raise ValueError("gamma must be >= 1")
    return math.pi * gamma * omega


def bernstein_ellipse_sup(f, theta: float, samples: int = 4000) -> float:
    """Max modulus of f on the Bernstein ellipse boundary, by uniform sampling.

    The boundary is the image of |z| = theta under the Joukowsky map
    (z + 1/z)/2; for f analytic inside, the maximum principle makes this the
    sup over the whole ellipse.
    """
    if theta <= 1.0:
        raise ValueError("need theta > 1")
    feval = getattr(f, "eval", f)
    phi = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    z = theta * np.exp(1j * phi)
    return float(np.max(np.abs(feval(0.5 * (z + 1.0 / z)))))
