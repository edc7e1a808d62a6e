"""Partial-sum reconstruction and error measurement on the plateau."""

from dataclasses import dataclass, field
import csv

import numpy as np
from scipy.integrate import simpson

from ._validation import as_float_array, check_int, check_nonnegative, check_odd_grid

__all__ = [
    "ErrorReport",
    "partial_sum",
    "reconstruct",
    "measure_errors",
    "ERROR_CSV_COLUMNS",
    "write_error_csv",
]

ERROR_CSV_COLUMNS = (
    "n", "sup_err", "l2_err_sq", "k_inf", "k_2", "envelope_sup_lo", "envelope_sup_hi",
)


@dataclass(frozen=True)
class ErrorReport:
    """Reconstruction errors of ``R_n`` on ``[t - rho_eval, t + rho_eval]``.

    ``imag_residual`` is ``max |Im R_n|`` on the grid, an accuracy diagnostic
    for real inputs. ``beyond_plateau`` is set when ``rho_eval`` exceeds the
    window's plateau, where comparisons against envelopes are exploratory.
    """

    n: int
    sup_error: float
    l2_error_sq: float
    rho_eval: float
    grid_points: int
    imag_residual: float = 0.0
    beyond_plateau: bool = False
    meta: dict = field(default_factory=dict, compare=False)


def _terms_available(coeffs, n):
    ks = np.arange(-n, n + 1)
    try:
        return coeffs.integer_values(ks)
    except ValueError as exc:
        raise ValueError(f"coefficients for |k| <= {n} are not all available: {exc}") from None


def partial_sum(coeffs, n, x):
    """``R_n(x) = sum_{|k| <= n} c(k) exp(i k pi x / lam)`` (complex)."""
    n = check_int(n, "n", minimum=0)
    c = _terms_available(coeffs, n)
    arr = as_float_array(x)
    theta = np.pi * np.atleast_1d(arr) / coeffs.frame.lam
    total = np.full(theta.shape, c[n], dtype=complex)
    for k in range(1, n + 1):
        e = np.exp(1j * k * theta)
        total += c[n + k] * e + c[n - k] * np.conj(e)
    if arr.ndim == 0:
        return complex(total[0])
    return total


def reconstruct(coeffs, n, x):
    """Real part of :func:`partial_sum`."""
    return np.real(partial_sum(coeffs, n, x))


def measure_errors(psi, coeffs, n_list, rho_eval, grid_points=2**16 + 1):
    """Sup and squared-L2 errors of ``R_n`` for every ``n`` in ``n_list``.

    The partial sums are accumulated once up to ``max(n_list)`` on a uniform
    grid of ``grid_points`` (odd) nodes; the L2 error uses composite Simpson.

    Returns
    -------
    list of ErrorReport
        In the order of ``n_list``.
    """
    n_list = [check_int(n, "n", minimum=0) for n in n_list]
    if not n_list:
        return []
    rho_eval = check_nonnegative(rho_eval, "rho_eval")
    grid_points = check_odd_grid(grid_points)
    n_max = max(n_list)
    c = _terms_available(coeffs, n_max)
    t = coeffs.frame.t
    x = np.linspace(t - rho_eval, t + rho_eval, grid_points)
    target = np.asarray(psi(x), dtype=float)
    theta = np.pi * x / coeffs.frame.lam
    plateau = coeffs.window.frame.rho if coeffs.window.kind != "rectangular" else coeffs.frame.lam
    beyond = rho_eval > plateau * (1 + 1e-12)

    wanted = set(n_list)
    found = {}
    total = np.full(x.shape, c[n_max], dtype=complex)
    for k in range(0, n_max + 1):
        if k:
            e = np.exp(1j * k * theta)
            total += c[n_max + k] * e + c[n_max - k] * np.conj(e)
        if k in wanted:
            err = target - total.real
            found[k] = ErrorReport(
                n=k,
                sup_error=float(np.max(np.abs(err))),
                l2_error_sq=float(simpson(err * err, x=x)),
                rho_eval=rho_eval,
                grid_points=grid_points,
                imag_residual=float(np.max(np.abs(total.imag))),
                beyond_plateau=beyond,
            )
    return [found[n] for n in n_list]


def write_error_csv(rows, path_or_buf, extra_columns=()):
    """Write error-table rows (mappings) with the standard column order first."""
    columns = list(ERROR_CSV_COLUMNS) + [c for c in extra_columns if c not in ERROR_CSV_COLUMNS]

    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, (float, np.floating)):
            return f"{v:.17g}"
        return str(v)

    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(row.get(col)) for col in columns])

    if hasattr(path_or_buf, "write"):
        emit(path_or_buf)
    else:
        with open(path_or_buf, "w", newline="") as fh:
            emit(fh)
