import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from bumpfourier.corpus import HERMITE_GAUSS, PARABOLA, SAW
from bumpfourier.spectral import (
    CoefficientSet,
    QuadratureGrid,
    coefficients_direct,
    coefficients_fft,
    dft,
    extended_coefficients,
)
from bumpfourier.windows import AnalysisFrame, SampledFunction, WindowSpec

complex_vectors = st.integers(0, 9).flatmap(
    lambda p: arrays(np.complex128, 2**p, elements=st.complex_numbers(max_magnitude=1e3,
                                                                      allow_nan=False,
                                                                      allow_infinity=False)))


@given(complex_vectors)
@settings(max_examples=60)
def test_dft_matches_numpy_power_of_two(v):
    np.testing.assert_allclose(dft(v), np.fft.fft(v), atol=1e-9 * (1 + np.abs(v).sum()))


@pytest.mark.parametrize("d", [1, 3, 6, 12, 100])
def test_dft_matches_numpy_other_lengths(d):
    v = np.random.default_rng(d).standard_normal(d) + 0j
    np.testing.assert_allclose(dft(v), np.fft.fft(v), atol=1e-10)


def test_dft_properties():
    rng = np.random.default_rng(1)
    a, b = rng.standard_normal(256), rng.standard_normal(256)
    np.testing.assert_allclose(dft(2 * a + 3j * b), 2 * dft(a) + 3j * dft(b), atol=1e-11)
    # Parseval
    assert np.sum(np.abs(dft(a)) ** 2) == pytest.approx(256 * np.sum(a * a))
    # a pure tone lands in one bin
    tone = np.exp(2j * np.pi * 5 * np.arange(64) / 64)
    spec = dft(tone)
    assert abs(spec[5] - 64) < 1e-11 and np.max(np.abs(np.delete(spec, 5))) < 1e-11
    with pytest.raises(ValueError):
        dft([])


def test_grid_validation():
    frame = AnalysisFrame(0.0, 1.0)
    with pytest.raises(ValueError, match="power of two"):
        QuadratureGrid(frame, 1000, 4096)
    with pytest.raises(ValueError, match="N >= m"):
        QuadratureGrid(frame, 1024, 512)
    grid = QuadratureGrid(AnalysisFrame(0.3, 2.0), 8, 16)
    nodes = grid.nodes()
    assert nodes[0] == pytest.approx(-1.7) and nodes[-1] == 2.3 and nodes.size == 9
    assert grid.spacing == 0.5


def _case(kind, t=0.0, lam=math.pi, rho=0.0, m=256, N=1024):
    frame = AnalysisFrame(t, lam, rho)
    return WindowSpec.from_frame(kind, frame), QuadratureGrid(frame, m, N)


@pytest.mark.parametrize("kind", ["rectangular", "hann", "tukey", "bump"])
@pytest.mark.parametrize("psi", [SAW, PARABOLA, HERMITE_GAUSS])
def test_fft_equals_direct(kind, psi):
    w, grid = _case(kind, t=0.4, lam=2.5, rho=1.5)
    fast = coefficients_fft(psi, w, grid, 128)
    slow = coefficients_direct(psi, w, grid, range(-128, 129))
    assert np.max(np.abs(fast.values - slow.values)) < 1e-13


def test_direct_oracle_of_pure_exponential():
    # trapezoid rule is exact for a band-limited periodic integrand
    lam, k0 = 1.5, 3
    w, grid = _case("rectangular", lam=lam, m=64, N=64)
    psi = lambda x: np.cos(k0 * np.pi * np.asarray(x) / lam)
    c = coefficients_fft(psi, w, grid, 10)
    expected = np.zeros(21, dtype=complex)
    expected[10 + k0] = expected[10 - k0] = 0.5
    np.testing.assert_allclose(c.values, expected, atol=1e-15)


def test_real_input_gives_conjugate_symmetry():
    w, grid = _case("bump", t=1.0, lam=2.0, rho=1.0)
    c = coefficients_fft(HERMITE_GAUSS, w, grid, 50)
    np.testing.assert_allclose(c.values, np.conj(c.values[::-1]), atol=1e-16)


def test_bump_coefficients_converge_spectrally():
    coarse = coefficients_fft(SAW, *_case("bump", rho=0.9 * math.pi, m=1024, N=1024), 32)
    fine = coefficients_fft(SAW, *_case("bump", rho=0.9 * math.pi, m=4096, N=4096), 32)
    assert np.max(np.abs(coarse.values - fine.values)) < 1e-14


def test_sampled_function_input():
    w, grid = _case("hann", m=256, N=1024)
    x = np.linspace(-math.pi, math.pi, 257)
    sampled = coefficients_fft(SampledFunction(x, x), w, grid, 20)
    exact = coefficients_fft(SAW, w, grid, 20)
    np.testing.assert_allclose(sampled.values, exact.values, atol=1e-14)
    with pytest.raises(ValueError, match="at least m"):
        coefficients_fft(SampledFunction(x[::2], x[::2]), w, grid, 20)


def test_argument_errors():
    w, grid = _case("hann", m=64, N=64)
    with pytest.raises(ValueError, match="m/2"):
        coefficients_fft(SAW, w, grid, 33)
    other = WindowSpec("hann", AnalysisFrame(0.5, math.pi))
    with pytest.raises(ValueError, match="does not match"):
        coefficients_fft(SAW, other, grid, 4)
    with pytest.raises(ValueError, match="finite"):
        coefficients_fft(lambda x: np.full_like(x, np.nan), w, grid, 4)


def test_coefficient_set_lookup_and_csv():
    w, grid = _case("rectangular", m=64, N=256)
    c = coefficients_fft(SAW, w, grid, 3)
    assert len(c) == 7 and c.method == "fft"
    assert c.integer_values([1])[0] == pytest.approx(-1j, abs=1e-3)
    with pytest.raises(ValueError, match="not in coefficient set"):
        c.integer_values([4])
    text = c.to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["xi", "re", "im", "abs2"] and len(rows) == 8
    re, im, abs2 = (float(v) for v in rows[2][1:])
    assert abs2 == pytest.approx(re * re + im * im, rel=1e-15)
    # 17 significant digits round-trip exactly
    assert complex(float(rows[4][1]), float(rows[4][2])) == c.values[3]
    buf = io.StringIO()
    c.to_csv(buf)
    assert buf.getvalue() == text
    with pytest.raises(ValueError, match="increasing"):
        CoefficientSet(c.frame, [1.0, 0.0], [0j, 0j], w, "x")


def test_extended_frequencies_and_integer_agreement():
    w, grid = _case("rectangular", m=128, N=512)
    ext = extended_coefficients(SAW, w, grid)
    assert ext.frequencies.size == 512
    np.testing.assert_allclose(ext.frequencies[:5], [0.0, 0.25, 0.5, 0.75, 1.0])
    ints = coefficients_fft(SAW, w, grid, 5)
    idx = [4 * k for k in range(6)]
    np.testing.assert_allclose(ext.values[idx], ints.values[5:], atol=1e-15)
