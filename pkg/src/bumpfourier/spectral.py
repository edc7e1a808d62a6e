"""Windowed Fourier coefficients by the composite trapezoid rule.

The coefficients

    c(xi) = 1/(2 lam) * int_{t-lam}^{t+lam} psi(x) w(x - t) exp(-i xi pi x / lam) dx

are approximated on the uniform grid ``x_j = t - lam + j * 2lam/m``,
``j = 0..m``. One length-``N`` DFT of the zero-padded samples
``v_j = psi(x_j) w(x_j - t)`` (``j < m``) yields every frequency
``xi = m n / N``; the trapezoid endpoint terms are added as corrections:

    c(xi) ~ exp(-i xi pi t / lam) exp(i xi pi) / m
            * (r1 exp(-2 pi i xi) - r2 + vhat[n])

with ``r1 = psi(t + lam) w(lam) / 2`` and ``r2 = psi(t - lam) w(-lam) / 2``.
Integer frequencies ``k`` sit at DFT index ``k N / m`` (negative ``k`` wrap
around to ``N - |k| N / m``). Stored values include the ``1/(2 lam)`` factor.
"""

from dataclasses import dataclass
import csv
import io

import numpy as np

from ._validation import check_int, check_power_of_two, is_power_of_two
from .windows import AnalysisFrame, SampledFunction, WindowSpec, window_eval

__all__ = [
    "QuadratureGrid",
    "CoefficientSet",
    "dft",
    "coefficients_fft",
    "coefficients_direct",
    "extended_coefficients",
]


@dataclass(frozen=True)
class QuadratureGrid:
    """``m + 1`` trapezoid nodes over the frame and a DFT length ``N >= m``."""

    frame: AnalysisFrame
    m: int = 2**12
    N: int = 2**14

    def __post_init__(self):
        m = check_power_of_two(self.m, "m", minimum=2)
        N = check_power_of_two(self.N, "N", minimum=2)
        if N < m:
            raise ValueError(f"N must satisfy N >= m (and m | N), got m={m}, N={N}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "N", N)

    @property
    def spacing(self):
        return 2.0 * self.frame.lam / self.m

    def nodes(self):
        """Nodes ``x_0..x_m``; the last node is exactly ``t + lam``."""
        t, lam = self.frame.t, self.frame.lam
        x = t - lam + self.spacing * np.arange(self.m + 1)
        x[-1] = t + lam
        return x


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Complex coefficients aligned with strictly increasing frequencies."""

    frame: AnalysisFrame
    frequencies: np.ndarray
    values: np.ndarray
    window: WindowSpec
    method: str

    def __post_init__(self):
        freqs = np.asarray(self.frequencies, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        if freqs.shape != vals.shape or freqs.ndim != 1:
            raise ValueError("frequencies and values must be 1-D arrays of equal length")
        if freqs.size > 1 and np.any(np.diff(freqs) <= 0):
            raise ValueError("frequencies must be strictly increasing")
        if not np.all(np.isfinite(vals)):
            raise ValueError("coefficient values must be finite")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.size

    def integer_values(self, ks):
        """Values at the integer frequencies ``ks``.

        Raises
        ------
        ValueError
            If any requested frequency is missing.
        """
        ks = np.asarray(ks)
        idx = np.searchsorted(self.frequencies, ks)
        idx = np.clip(idx, 0, len(self) - 1)
        if ks.size and not np.array_equal(self.frequencies[idx], ks.astype(float)):
            missing = ks[self.frequencies[idx] != ks]
            raise ValueError(f"frequencies {missing.tolist()[:5]} not in coefficient set")
        return self.values[idx]

    def to_csv(self, path_or_buf=None):
        """Write ``xi,re,im,abs2`` rows with 17 significant digits.

        Returns the CSV text when ``path_or_buf`` is None.
        """
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["xi", "re", "im", "abs2"])
        for xi, c in zip(self.frequencies, self.values):
            writer.writerow([f"{xi:.17g}", f"{c.real:.17g}", f"{c.imag:.17g}",
                             f"{abs(c) ** 2:.17g}"])
        text = buf.getvalue()
        if path_or_buf is None:
            return text
        if hasattr(path_or_buf, "write"):
            path_or_buf.write(text)
        else:
            with open(path_or_buf, "w", newline="") as fh:
                fh.write(text)
        return None


def _bit_reverse_indices(n):
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _fft_radix2(v):
    n = v.size
    x = v[_bit_reverse_indices(n)]
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = x.reshape(-1, size)
        even = blocks[:, :half]
        odd = blocks[:, half:] * twiddle
        x = np.concatenate([even + odd, even - odd], axis=1).ravel()
        size *= 2
    return x


def _dft_direct(v):
    d = v.size
    j = np.arange(d)
    phase = np.outer(j, j) % d
    return np.exp(-2j * np.pi * phase / d) @ v


def dft(v):
    """Unnormalised DFT ``vhat_l = sum_j v_j exp(-2 pi i j l / d)``.

    Power-of-two lengths use an iterative radix-2 FFT; other lengths fall back
    to direct ``O(d^2)`` summation.
    """
    v = np.asarray(v, dtype=complex).ravel()
    if v.size == 0:
        raise ValueError("dft of an empty vector")
    if is_power_of_two(v.size):
        return _fft_radix2(v)
    return _dft_direct(v)


def _node_weights(w, grid):
    """Window values at the nodes, in local coordinates.

    The rectangular window is taken as ``w = 1`` on the closed interval so
    that the trapezoid endpoints carry ``psi(t -+ lam)``.
    """
    local = grid.nodes() - grid.frame.t
    local[0], local[-1] = -grid.frame.lam, grid.frame.lam
    if w.kind == "rectangular":
        return np.ones_like(local)
    return window_eval(w, local)


def _samples(psi, w, grid):
    if w.frame.lam != grid.frame.lam or w.frame.t != grid.frame.t:
        raise ValueError(
            f"window frame (t={w.frame.t}, lam={w.frame.lam}) does not match grid frame "
            f"(t={grid.frame.t}, lam={grid.frame.lam})"
        )
    if isinstance(psi, SampledFunction) and psi.n_samples < grid.m + 1:
        raise ValueError(
            f"sampled function has {psi.n_samples} samples; at least m + 1 = {grid.m + 1} needed"
        )
    x = grid.nodes()
    values = np.asarray(psi(x), dtype=float) * _node_weights(w, grid)
    if not np.all(np.isfinite(values)):
        raise ValueError("psi * w is not finite at the quadrature nodes")
    return values


def _assemble(values, grid, xi, vhat_n):
    t, lam, m = grid.frame.t, grid.frame.lam, grid.m
    r1 = values[-1] / 2.0
    r2 = values[0] / 2.0
    phase = np.exp(-1j * xi * np.pi * t / lam) * np.exp(1j * xi * np.pi)
    return phase / m * (r1 * np.exp(-2j * np.pi * xi) - r2 + vhat_n)


def _transform(values, grid):
    v = np.zeros(grid.N, dtype=complex)
    v[: grid.m] = values[:-1]
    return dft(v)


def coefficients_fft(psi, w, grid, k_max):
    """Coefficients ``c(k)`` for ``k = -k_max..k_max`` from a single DFT.

    Parameters
    ----------
    psi : callable
        Vectorised real function (closed form or :class:`SampledFunction`).
    w : WindowSpec
        Window; its ``t`` and ``lam`` must match ``grid.frame``.
    grid : QuadratureGrid
    k_max : int
        Largest frequency, at most ``m / 2``.
    """
    k_max = check_int(k_max, "k_max", minimum=0)
    if k_max > grid.m // 2:
        raise ValueError(f"k_max must be <= m/2 = {grid.m // 2}, got {k_max}")
    values = _samples(psi, w, grid)
    vhat = _transform(values, grid)
    ks = np.arange(-k_max, k_max + 1)
    idx = (ks * (grid.N // grid.m)) % grid.N
    coeffs = _assemble(values, grid, ks.astype(float), vhat[idx])
    return CoefficientSet(grid.frame, ks, coeffs, w, "fft")


def coefficients_direct(psi, w, grid, k_list, chunk=256):
    """Same trapezoid sum evaluated term by term, without the FFT.

    The phase ``exp(-i k pi x_j / lam)`` is reduced exactly as
    ``exp(-i k pi (t - lam) / lam) * exp(-2 pi i (k j mod m) / m)``.
    """
    ks = np.unique(np.asarray(k_list, dtype=np.int64))
    values = _samples(psi, w, grid)
    t, lam, m = grid.frame.t, grid.frame.lam, grid.m
    weights = np.ones(m + 1)
    weights[0] = weights[-1] = 0.5
    fw = values * weights
    j = np.arange(m + 1)
    out = np.empty(ks.size, dtype=complex)
    for start in range(0, ks.size, chunk):
        kc = ks[start:start + chunk]
        reduced = np.outer(kc, j) % m
        terms = np.exp(-2j * np.pi * reduced / m) @ fw
        out[start:start + chunk] = np.exp(-1j * np.pi * kc * (t - lam) / lam) * terms / m
    return CoefficientSet(grid.frame, ks, out, w, "direct")


def extended_coefficients(psi, w, grid):
    """Coefficients at the fractional frequencies ``xi_n = m n / N``, ``n < N``."""
    values = _samples(psi, w, grid)
    vhat = _transform(values, grid)
    n = np.arange(grid.N)
    xi = grid.m * n / grid.N
    coeffs = _assemble(values, grid, xi, vhat)
    return CoefficientSet(grid.frame, xi, coeffs, w, "fft-extended")
