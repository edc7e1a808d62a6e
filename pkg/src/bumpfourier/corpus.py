"""Test functions, closed-form Fourier coefficients and experiment presets.

The three test functions are the saw ``x``, the parabola ``x**2`` and the
shifted Hermite function ``(8x^3 - 24x^2 + 12x + 4) exp(-(x-1)^2 / 2)``.
Each is stored as a polynomial times an optional Gaussian factor, which
gives exact derivatives of every order.
"""

from dataclasses import dataclass
import math

import numpy as np
from numpy.polynomial import Polynomial

from ._validation import check_finite_scalar, check_int
from .windows import AnalysisFrame, WindowSpec

__all__ = [
    "TestFunction",
    "SAW",
    "PARABOLA",
    "HERMITE_GAUSS",
    "ONE",
    "FUNCTIONS",
    "ExperimentPreset",
    "ReferenceConstants",
    "PRESETS",
    "get_preset",
    "analytic_coefficient",
    "analytic_coefficients",
    "analytic_extended_coefficient",
    "paper_reference_constants",
]


@dataclass(frozen=True)
class TestFunction:
    """``poly(x) * exp(-(x - center)**2 / 2)`` if ``gaussian`` else ``poly(x)``."""

    __test__ = False  # not a pytest class

    name: str
    poly: Polynomial
    gaussian: bool = False
    center: float = 0.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = self.poly(x)
        if self.gaussian:
            out = out * np.exp(-0.5 * (x - self.center) ** 2)
        return float(out) if out.ndim == 0 else out

    def derivative(self, order):
        """The exact ``order``-th derivative as a new :class:`TestFunction`."""
        order = check_int(order, "order", minimum=0)
        p = self.poly
        shift = Polynomial([-self.center, 1.0])
        for _ in range(order):
            # d/dx [p e^{-(x-c)^2/2}] = (p' - (x-c) p) e^{-(x-c)^2/2}
            p = p.deriv() - shift * p if self.gaussian else p.deriv()
        return TestFunction(f"{self.name}'{order}", p, self.gaussian, self.center)

    def sup_abs(self, a, b, grid_points=2**16 + 1):
        """Dense-grid estimate of ``sup |f|`` on ``[a, b]`` (endpoints included)."""
        x = np.linspace(a, b, grid_points)
        return float(np.max(np.abs(self(x))))


SAW = TestFunction("saw", Polynomial([0.0, 1.0]))
PARABOLA = TestFunction("parabola", Polynomial([0.0, 0.0, 1.0]))
HERMITE_GAUSS = TestFunction(
    "hermite", Polynomial([4.0, 12.0, -24.0, 8.0]), gaussian=True, center=1.0
)
ONE = TestFunction("one", Polynomial([1.0]))

FUNCTIONS = {f.name: f for f in (SAW, PARABOLA, HERMITE_GAUSS, ONE)}


@dataclass(frozen=True)
class ReferenceConstants:
    k_inf_reported: float
    k2_reported: float
    note: str = ""
    disputed: bool = False


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    function: TestFunction
    frame: AnalysisFrame
    windows: tuple
    reference: ReferenceConstants | None = None
    recon_n: int = 10

    def window(self, kind):
        return WindowSpec.from_frame(kind, self.frame)


PRESETS = {
    "saw": ExperimentPreset(
        "saw",
        SAW,
        AnalysisFrame(0.0, math.pi, 0.9 * math.pi),
        ("rectangular", "hann", "bump"),
        ReferenceConstants(
            8.91,
            2.76,
            note="printed as K_inf ~ 8.91, K_2 ~ 2.76; the definitions give "
                 "K_inf ~ 2.76 and K_2 ~ 8.9, so the pair is possibly transposed",
            disputed=True,
        ),
        recon_n=10,
    ),
    "parabola-rho025": ExperimentPreset(
        "parabola-rho025",
        PARABOLA,
        AnalysisFrame(0.0, 1.0, 0.25),
        ("rectangular", "hann", "bump"),
        ReferenceConstants(9.1e-3, 4.7e-6),
        recon_n=50,
    ),
    "parabola-rho08": ExperimentPreset(
        "parabola-rho08",
        PARABOLA,
        AnalysisFrame(0.0, 1.0, 0.8),
        ("rectangular", "hann", "bump"),
        ReferenceConstants(0.58, 0.075),
        recon_n=50,
    ),
    "hermite": ExperimentPreset(
        "hermite",
        HERMITE_GAUSS,
        AnalysisFrame(1.0, 2 * math.pi, 5.9),
        ("rectangular", "tukey", "bump"),
        None,
        recon_n=10,
    ),
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def _sign(k):
    return -1.0 if k % 2 else 1.0


def analytic_coefficient(function, window, k):
    """Closed-form coefficient for the saw (``lam = pi``) or parabola (``lam = 1``).

    Parameters
    ----------
    function : TestFunction or str
        ``"saw"`` or ``"parabola"``, both centred at ``t = 0``.
    window : str
        ``"plain"`` (rectangular) or ``"hann"``.
    k : int
        Frequency index.

    Returns
    -------
    complex
        ``c(k) = (1/2lam) int psi(x) w(x) exp(-i k pi x / lam) dx``.
    """
    name = function.name if isinstance(function, TestFunction) else str(function)
    k = check_int(k, "k")
    if window not in ("plain", "hann"):
        raise ValueError(f"unsupported window {window!r} for closed-form coefficients")
    sgn = _sign(k)
    pi2 = math.pi**2
    if name == "saw":
        if k == 0:
            return 0j
        if window == "plain":
            return 1j * sgn / k
        if k == 1:
            return -3j / 8
        if k == -1:
            return 3j / 8
        return -1j * sgn / (2 * k * (k * k - 1))
    if name == "parabola":
        if window == "plain":
            if k == 0:
                return complex(1 / 3)
            return complex(2 * sgn / (k * k * pi2))
        if k == 0:
            return complex(1 / 6 - 1 / pi2)
        if abs(k) == 1:
            return complex(1 / 12 - 7 / (8 * pi2))
        return complex(sgn * (1 - 3 * k * k) / (k * k * (k * k - 1) ** 2 * pi2))
    raise NotImplementedError(f"no closed-form coefficients for {name!r}")


def analytic_coefficients(function, window, ks):
    return np.array([analytic_coefficient(function, window, int(k)) for k in ks])


def analytic_extended_coefficient(function, xi):
    """Fourier integral ``(1/2pi) int_{-pi}^{pi} f(x) exp(-i xi x) dx`` at real ``xi``.

    Supported for ``"one"`` (``sinc(xi)``) and ``"saw"``.
    """
    name = function.name if isinstance(function, TestFunction) else str(function)
    xi = check_finite_scalar(xi, "xi")
    if name == "one":
        return complex(np.sinc(xi))
    if name == "saw":
        if xi == 0.0:
            return 0j
        a = math.pi * xi
        if abs(a) < 1e-3:
            # series of (a cos a - sin a) / (pi xi^2), avoids cancellation
            return 1j * (-math.pi**2 * xi / 3 + math.pi**4 * xi**3 / 30 - math.pi**6 * xi**5 / 840)
        return 1j * (a * math.cos(a) - math.sin(a)) / (math.pi * xi * xi)
    raise NotImplementedError(f"no closed-form extended coefficients for {name!r}")


def paper_reference_constants(preset):
    """Published reference ``(K_inf, K_2)`` values for the Hann experiments, or ``None``."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    return preset.reference

