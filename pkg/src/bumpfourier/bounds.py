"""Error bounds and combinatorial constants for windowed Fourier series.

Integer constants (``K(i, s)``, ``K_s`` and its upper bound) are exact Python
integers or :class:`fractions.Fraction`; nothing here rounds them.

Bounds on the Lipschitz constant ``L_s`` are stated for the standard frame
``lam = pi``, ``t = 0``. :func:`smoothness_data` and
:func:`measured_lipschitz` map a general frame onto it as
:func:`~bumpfourier.windows.to_standard_frame` does, multiplying ``j``-th
derivative suprema by ``(lam / pi)**j``.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np
from scipy.integrate import simpson

from ._validation import (
    check_int,
    check_nonnegative,
    check_odd_grid,
    check_positive,
)
from .windows import (
    derivative_sup,
    smooth_pieces,
    window_derivative_sup,
    window_eval,
)

__all__ = [
    "SmoothnessData",
    "jackson_sup_bound",
    "coefficient_decay_bound",
    "variation_coefficient_bound",
    "k_small",
    "ore_intermediate_bound",
    "c_constant",
    "product_derivative_bound",
    "ks_sum",
    "ks_closed",
    "ks_upper",
    "ks_log_approx",
    "ks_log_exact",
    "lipschitz_bound",
    "smoothness_data",
    "k_inf_constant",
    "k2_constant",
    "sup_error_envelope",
    "l2_error_envelope",
    "measure_lipschitz",
    "measured_lipschitz",
]

MAX_FD_ORDER = 5


@dataclass(frozen=True)
class SmoothnessData:
    """Inputs of the Lipschitz bound, all in the standard frame.

    Attributes
    ----------
    s : int
        Smoothness order, ``s >= 1``.
    m_psi : float
        ``sup |psi|`` on ``(-pi, pi)``.
    m_psi_s1 : float
        ``sup |psi^(s+1)|`` on ``(-pi, pi)``.
    w_s1_sup : float
        ``sup |w^(s+1)|``.
    scale : float
        ``lam / pi`` of the original frame (1 when already standard).
    w_s1_estimated : bool
        True when ``w_s1_sup`` is a finite-difference estimate (smooth bump)
        rather than a closed form.
    """

    s: int
    m_psi: float
    m_psi_s1: float
    w_s1_sup: float
    scale: float = 1.0
    w_s1_estimated: bool = False

    def __post_init__(self):
        check_int(self.s, "s", minimum=1)
        for name in ("m_psi", "m_psi_s1", "w_s1_sup"):
            check_nonnegative(getattr(self, name), name)
        check_positive(self.scale, "scale")


def jackson_sup_bound(V, s, n):
    """``2 V / (s pi n^s)``: sup error of the partial sum ``S_n f``."""
    V = check_nonnegative(V, "V")
    s = check_int(s, "s", minimum=1)
    n = check_int(n, "n", minimum=1)
    return 2.0 * V / (s * math.pi * float(n) ** s)


def coefficient_decay_bound(V_s, s, k):
    """``V_s / (pi |k|^(s+1))`` where ``V_s`` is the variation of the ``s``-th derivative."""
    V_s = check_nonnegative(V_s, "V_s")
    s = check_int(s, "s", minimum=1)
    k = check_int(k, "k")
    if k == 0:
        raise ValueError("coefficient decay bound needs k != 0")
    return V_s / (math.pi * float(abs(k)) ** (s + 1))


def variation_coefficient_bound(V, k=None):
    """Bound ``V / (2 pi)`` on ``|k c(k)|``; independent of ``k``."""
    return check_nonnegative(V, "V") / (2.0 * math.pi)


def k_small(i, s):
    """Ore's constant ``K(i, s) = (s/(s+i)) 4^i i! C(s+i, 2i)`` as an exact int."""
    s = check_int(s, "s", minimum=1)
    i = check_int(i, "i", minimum=1)
    if i > s:
        raise ValueError(f"K(i, s) needs 1 <= i <= s, got i={i}, s={s}")
    numerator = s * 4**i * math.factorial(i) * math.comb(s + i, 2 * i)
    q, r = divmod(numerator, s + i)
    if r:
        raise ArithmeticError(f"K({i}, {s}) is not integral; numerator {numerator}")
    return q


def ore_intermediate_bound(i, s, c_sf, width):
    """``K(i, s) C_{s,f} / width^i``: bound on ``|f^(i)|`` over an interval of ``width``."""
    c_sf = check_nonnegative(c_sf, "c_sf")
    width = check_positive(width, "width")
    return float(k_small(i, s)) * c_sf / width**i


def c_constant(m_f, m_f_s1, width, s):
    """``C_{s,f} = sup|f| + width^(s+1) / (s+1)! * sup|f^(s+1)|``."""
    m_f = check_nonnegative(m_f, "m_f")
    m_f_s1 = check_nonnegative(m_f_s1, "m_f_s1")
    width = check_positive(width, "width")
    s = check_int(s, "s", minimum=1)
    return m_f + width ** (s + 1) / math.factorial(s + 1) * m_f_s1


def product_derivative_bound(mf, mg, mf_s1, mg_s1, csf, csg, width, s):
    """Leibniz/Ore bound on ``|(f g)^(s+1)|`` over an interval of ``width``."""
    for name, value in (("mf", mf), ("mg", mg), ("mf_s1", mf_s1), ("mg_s1", mg_s1),
                        ("csf", csf), ("csg", csg)):
        check_nonnegative(value, name)
    width = check_positive(width, "width")
    s = check_int(s, "s", minimum=1)
    return mf * mg_s1 + mf_s1 * mg + csf * csg * float(ks_closed(s)) / width ** (s + 1)


def ks_sum(s):
    """``K_s = sum_{k=1}^{s} C(s+1, k) K(s+1-k, s) K(k, s)``, exact."""
    s = check_int(s, "s", minimum=1)
    return sum(math.comb(s + 1, k) * k_small(s + 1 - k, s) * k_small(k, s)
               for k in range(1, s + 1))


def ks_closed(s):
    """``K_s = 2^(2s+1) s^2 (3s)! / (2s+1)!``, exact.

    ``(3s)! / (2s+1)!`` is the product ``(2s+2) ... (3s)``, so no division
    is needed.
    """
    s = check_int(s, "s", minimum=1)
    return 2 ** (2 * s + 1) * s * s * math.prod(range(2 * s + 2, 3 * s + 1))


def ks_upper(s):
    """Binomial upper bound ``K_s * 2s/(s+2)`` for ``s >= 2``, as a Fraction."""
    s = check_int(s, "s", minimum=2)
    return Fraction(ks_closed(s)) * Fraction(2 * s, s + 2)


def ks_log_approx(s):
    """``ln`` of the Stirling asymptotic ``s sqrt(3/2) (27 s / e)^s``."""
    s = check_int(s, "s", minimum=1)
    return math.log(s) + 0.5 * math.log(1.5) + s * (math.log(27.0) + math.log(s) - 1.0)


def ks_log_exact(s):
    """``ln K_s`` through log-gamma; finite for any ``s``."""
    s = check_int(s, "s", minimum=1)
    return ((2 * s + 1) * math.log(2.0) + 2.0 * math.log(s)
            + math.lgamma(3 * s + 1) - math.lgamma(2 * s + 2))


def lipschitz_bound(data):
    """Upper bound on ``L_s = sup |(w psi)^(s+1)|`` over ``(-pi, pi)``."""
    s = data.s
    width = 2.0 * math.pi
    c_psi = c_constant(data.m_psi, data.m_psi_s1, width, s)
    c_w = c_constant(1.0, data.w_s1_sup, width, s)
    return (data.m_psi_s1 + data.m_psi * data.w_s1_sup
            + c_psi * c_w / width ** (s + 1) * float(ks_closed(s)))


def smoothness_data(psi, w, s, grid_points=2**14 + 1):
    """Collect the bound inputs for ``psi`` under window ``w``, rescaled to ``lam = pi``.

    ``psi`` may provide ``derivative(order)`` (as corpus functions do); other
    callables fall back to :func:`derivative_sup` for ``sup |psi^(s+1)|``.
    """
    s = check_int(s, "s", minimum=1)
    t, lam = w.frame.t, w.frame.lam
    c = lam / math.pi
    x = np.linspace(t - lam, t + lam, grid_points)
    m_psi = float(np.max(np.abs(psi(x))))
    if hasattr(psi, "derivative"):
        m_psi_s1 = float(np.max(np.abs(psi.derivative(s + 1)(x))))
    else:
        m_psi_s1 = derivative_sup(psi, t - lam, t + lam, s + 1, grid_points=grid_points)
    w_s1 = window_derivative_sup(w, s + 1)
    return SmoothnessData(s, m_psi, c ** (s + 1) * m_psi_s1, c ** (s + 1) * w_s1, scale=c,
                          w_s1_estimated=w.kind == "bump")


def _eval_grid(w, rho_eval, grid_points):
    rho_eval = check_nonnegative(rho_eval, "rho_eval")
    if rho_eval >= w.frame.lam:
        raise ValueError(f"rho_eval must be < lam = {w.frame.lam}, got {rho_eval}")
    grid_points = check_odd_grid(grid_points)
    return np.linspace(w.frame.t - rho_eval, w.frame.t + rho_eval, grid_points)


def k_inf_constant(psi, w, rho_eval, grid_points=2**16 + 1):
    """``sup |psi(x)| (1 - w(x - t))`` over ``[t - rho_eval, t + rho_eval]``.

    Dense-grid maximum followed by one Newton step from the best interior
    node, using finite-difference derivatives.
    """
    x = _eval_grid(w, rho_eval, grid_points)
    t = w.frame.t

    def objective(u):
        u = np.asarray(u, dtype=float)
        return np.abs(psi(u)) * (1.0 - window_eval(w, u - t))

    g = objective(x)
    j = int(np.argmax(g))
    best = float(g[j])
    if 0 < j < x.size - 1:
        h = x[1] - x[0]
        gm, g0, gp = objective([x[j] - h, x[j], x[j] + h])
        d1 = (gp - gm) / (2 * h)
        d2 = (gp - 2 * g0 + gm) / h**2
        if d2 < 0:
            cand = float(np.clip(x[j] - d1 / d2, x[j - 1], x[j + 1]))
            best = max(best, float(objective(cand)))
    return best


def k2_constant(psi, w, rho_eval, grid_points=2**16 + 1):
    """``int |psi|^2 (1 - w(x - t))^2`` over ``[t - rho_eval, t + rho_eval]`` by Simpson."""
    x = _eval_grid(w, rho_eval, grid_points)
    integrand = (np.asarray(psi(x), dtype=float) * (1.0 - window_eval(w, x - w.frame.t))) ** 2
    return float(simpson(integrand, x=x))


def sup_error_envelope(k_inf, L_s, s, n):
    """Band ``k_inf -+ 4 L_s / (s n^s)`` for the sup reconstruction error (lower end clamped at 0)."""
    k_inf = check_nonnegative(k_inf, "k_inf")
    L_s = check_nonnegative(L_s, "L_s")
    s = check_int(s, "s", minimum=1)
    n = check_int(n, "n", minimum=1)
    half = 4.0 * L_s / (s * float(n) ** s)
    return max(0.0, k_inf - half), k_inf + half


def l2_error_envelope(k2, k_inf, L_s, rho, s, n):
    """Band for the squared L2 error on ``[-rho, rho]``.

    ``rho`` is the evaluation half-width in the caller's units; with ``L_s``
    taken in the standard frame the band is then valid in the same units as
    ``k2``.
    """
    k2 = check_nonnegative(k2, "k2")
    k_inf = check_nonnegative(k_inf, "k_inf")
    L_s = check_nonnegative(L_s, "L_s")
    rho = check_nonnegative(rho, "rho")
    s = check_int(s, "s", minimum=1)
    n = check_int(n, "n", minimum=1)
    ns = float(n) ** s
    half = 16.0 * rho * L_s * k_inf / (s * ns) + 32.0 * rho * L_s**2 / (s * s * ns * ns)
    return max(0.0, k2 - half), k2 + half


def measure_lipschitz(psi_w, s, grid_points=2**14 + 1):
    """Finite-difference estimate of ``sup |psi_w^(s+1)|`` over ``[-pi, pi]``.

    ``psi_w`` must be defined slightly beyond ``[-pi, pi]`` (stencil reach).
    """
    s = check_int(s, "s", minimum=1)
    if s + 1 > MAX_FD_ORDER:
        raise NotImplementedError(f"derivative order {s + 1} exceeds {MAX_FD_ORDER}")
    return derivative_sup(psi_w, -math.pi, math.pi, s + 1, grid_points=grid_points)


def measured_lipschitz(psi, w, s, grid_points=2**14 + 1):
    """``L_s`` of ``psi * w`` in the standard frame, by finite differences.

    Each analytic piece of the window (see
    :func:`~bumpfourier.windows.smooth_pieces`) is differenced separately, so
    a jump in ``(psi w)^(s+1)`` at a taper junction is not smeared into the
    estimate. The supremum over the pieces is rescaled by ``(lam/pi)^(s+1)``.
    ``psi`` must be defined slightly beyond ``[t - lam, t + lam]``.
    """
    s = check_int(s, "s", minimum=1)
    if s + 1 > MAX_FD_ORDER:
        raise NotImplementedError(f"derivative order {s + 1} exceeds {MAX_FD_ORDER}")
    t = w.frame.t
    best = 0.0
    for a, b, g in smooth_pieces(w):
        def piece(x, g=g):
            x = np.asarray(x, dtype=float)
            return np.asarray(psi(x), dtype=float) * g(x - t)

        best = max(best, derivative_sup(piece, t + a, t + b, s + 1, grid_points=grid_points))
    return best * (w.frame.lam / math.pi) ** (s + 1)
