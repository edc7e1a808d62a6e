import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import expit

from bumpfourier.windows import (
    AnalysisFrame,
    SampledFunction,
    WindowSpec,
    derivative_sup,
    hann_superposition,
    periodize,
    scale,
    smooth_pieces,
    to_standard_frame,
    translate,
    window_derivative_sup,
    window_eval,
    windowed,
)


def bump(lam=1.0, rho=0.4, t=0.0):
    return WindowSpec("bump", AnalysisFrame(t, lam, rho))


# ---------------------------------------------------------------- frames/specs

def test_frame_rejects_bad_geometry():
    with pytest.raises(ValueError):
        AnalysisFrame(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        AnalysisFrame(0.0, -1.0)
    with pytest.raises(ValueError):
        AnalysisFrame(0.0, 1.0, -0.1)
    with pytest.raises(ValueError):
        AnalysisFrame(float("nan"), 1.0)
    assert AnalysisFrame(1.0, 2.0, 0.5).interval == (-1.0, 3.0)


def test_spec_consistency_rules():
    with pytest.raises(ValueError, match="degenerate"):
        WindowSpec("hann", AnalysisFrame(0.0, 1.0, 0.3))
    with pytest.raises(ValueError, match="alpha only"):
        WindowSpec("bump", AnalysisFrame(0.0, 1.0, 0.3), alpha=0.5)
    with pytest.raises(ValueError, match="inconsistent"):
        WindowSpec("tukey", AnalysisFrame(0.0, 1.0, 0.3), alpha=0.5)
    with pytest.raises(ValueError):
        WindowSpec("tukey", AnalysisFrame(0.0, 1.0, 0.0), alpha=1.5)
    with pytest.raises(ValueError, match="unknown"):
        WindowSpec("blackman", AnalysisFrame(0.0, 1.0))
    tukey = WindowSpec("tukey", AnalysisFrame(0.0, 2.0, 0.5))
    assert tukey.alpha == pytest.approx(0.75)


def test_from_frame_maps_plateau_per_kind():
    frame = AnalysisFrame(1.0, 2.0, 1.5)
    assert WindowSpec.from_frame("hann", frame).rho == 0.0
    assert WindowSpec.from_frame("bump", frame).rho == 1.5
    tukey = WindowSpec.from_frame("tukey", frame)
    assert tukey.alpha == pytest.approx(0.25)
    assert tukey.rho == pytest.approx(1.5)
    assert WindowSpec.from_frame("tukey", frame, alpha=0.5).rho == pytest.approx(1.0)


# ---------------------------------------------------------------- values

def test_known_values():
    hann = WindowSpec("hann", AnalysisFrame(0.0, 2.0))
    assert window_eval(hann, 0.0) == 1.0
    assert window_eval(hann, 1.0) == pytest.approx(0.5)
    tukey = WindowSpec("tukey", AnalysisFrame(0.0, 1.0, 0.5), alpha=0.5)
    assert window_eval(tukey, 0.5) == pytest.approx(1.0)
    assert window_eval(tukey, 0.75) == pytest.approx(0.5)
    rect = WindowSpec("rectangular", AnalysisFrame(0.0, 1.0))
    np.testing.assert_array_equal(window_eval(rect, [-1.0, -0.999, 0.999, 1.0]), [0, 1, 1, 0])
    # at the taper midpoint the bump exponent vanishes: 1/(lam-u) + 1/(rho-u) = 0
    assert window_eval(bump(1.0, 0.4), 0.7) == pytest.approx(0.5, abs=1e-15)


def test_bump_matches_independent_formula():
    lam, rho = 1.3, 0.5
    u = np.linspace(rho + 1e-3, lam - 1e-3, 1001)
    with np.errstate(over="ignore"):
        expected = 1.0 / (1.0 + np.exp(1.0 / (lam - u) + 1.0 / (rho - u)))
    np.testing.assert_allclose(window_eval(bump(lam, rho), u), expected, rtol=1e-13, atol=1e-300)


def test_scalar_returns_float_and_infinity_is_zero():
    w = bump()
    assert isinstance(window_eval(w, 0.2), float)
    assert window_eval(w, np.inf) == 0.0
    with pytest.raises(ValueError, match="NaN"):
        window_eval(w, [0.0, np.nan])


@given(kind=st.sampled_from(["hann", "tukey", "bump", "rectangular"]),
       lam=st.floats(0.1, 10.0), frac=st.floats(0.0, 0.95),
       x=st.floats(-20.0, 20.0))
def test_window_range_symmetry_support(kind, lam, frac, x):
    w = WindowSpec.from_frame(kind, AnalysisFrame(0.0, lam, frac * lam))
    v = window_eval(w, x)
    assert 0.0 <= v <= 1.0
    assert v == window_eval(w, -x)
    if abs(x) >= lam:
        assert v == 0.0
    if kind in ("bump", "rectangular") and abs(x) <= w.rho:
        assert v == 1.0


def test_bump_is_monotone_on_taper():
    u = np.linspace(0.4, 1.0, 5001)
    values = window_eval(bump(1.0, 0.4), u)
    assert np.all(np.diff(values) <= 0)


# ---------------------------------------------------------------- operators

def test_translate_scale_inverse_pairs():
    f = lambda x: np.asarray(x) ** 3 - 2 * np.asarray(x)
    x = np.array([-1.5, -0.25, 0.0, 0.5, 2.0])
    np.testing.assert_array_equal(translate(translate(f, 0.75), -0.75)(x), f(x))
    np.testing.assert_array_equal(scale(scale(f, 4.0), 0.25)(x), f(x))
    with pytest.raises(ValueError):
        scale(f, 0.0)


@given(x=st.floats(-50.0, 50.0), lam=st.floats(0.5, 4.0))
@settings(max_examples=50)
def test_periodize_is_periodic(x, lam):
    g = periodize(lambda u: np.asarray(u) ** 2 + u, lam)
    assert g(x + 2 * lam) == pytest.approx(g(x), abs=1e-9 * (1 + abs(x)))


def test_periodize_boundary_average():
    g = periodize(lambda u: np.asarray(u, dtype=float), 1.0)
    assert g(1.0) == pytest.approx(0.0, abs=1e-11)
    assert g(-3.0) == pytest.approx(0.0, abs=1e-11)
    assert g(0.5) == pytest.approx(0.5)
    assert g(2.5) == pytest.approx(0.5)


def test_windowed_and_standard_frame():
    w = bump(2.0, 1.0, t=1.0)
    f = windowed(lambda x: np.asarray(x), w)
    assert f(1.5) == pytest.approx(1.5)
    assert f(3.5) == 0.0
    g = to_standard_frame(f, w.frame)
    # y = pi maps to t + lam
    assert g(np.pi) == pytest.approx(f(3.0))
    assert g(0.0) == pytest.approx(1.0)


def test_hann_superposition_partition_of_unity():
    x = np.linspace(-2.0, 2.0, 801)
    np.testing.assert_allclose(hann_superposition(1.0, 2, x), 1.0, atol=1e-15)
    assert hann_superposition(1.0, 0, 0.5) == pytest.approx(0.5)


# ---------------------------------------------------------------- sampled functions

def test_sampled_function():
    x = np.linspace(0.0, 1.0, 11)
    f = SampledFunction(x, 2 * x)
    assert f(0.55) == pytest.approx(1.1)
    with pytest.raises(ValueError, match="outside"):
        f(1.1)
    with pytest.raises(ValueError, match="uniform"):
        SampledFunction([0.0, 0.1, 0.3], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="increasing"):
        SampledFunction([0.0, 0.0, 1.0], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="finite"):
        SampledFunction([0.0, 1.0], [0.0, np.inf])


# ---------------------------------------------------------------- derivatives

@pytest.mark.parametrize("order,rel", [(1, 1e-8), (2, 1e-7), (3, 1e-7), (4, 1e-6), (5, 1e-4)])
def test_derivative_sup_of_sine(order, rel):
    assert derivative_sup(np.sin, 0.0, 2 * np.pi, order) == pytest.approx(1.0, rel=rel)


def test_closed_form_window_derivatives():
    hann = WindowSpec("hann", AnalysisFrame(0.0, 2.0))
    assert window_derivative_sup(hann, 3) == pytest.approx(0.5 * (np.pi / 2.0) ** 3)
    tukey = WindowSpec("tukey", AnalysisFrame(0.0, 2.0, 1.0), alpha=0.5)
    assert window_derivative_sup(tukey, 2) == pytest.approx(0.5 * (np.pi / 1.0) ** 2)
    # the closed form agrees with differencing the window itself
    fd = derivative_sup(hann, -1.9, 1.9, 2)
    assert fd == pytest.approx(window_derivative_sup(hann, 2), rel=1e-6)
    with pytest.raises(NotImplementedError):
        window_derivative_sup(WindowSpec("rectangular", AnalysisFrame(0.0, 1.0)), 1)


def _bump_first_derivative(u, lam, rho):
    z = 1.0 / (lam - u) + 1.0 / (rho - u)
    s = expit(-z)
    return -s * (1.0 - s) * (1.0 / (lam - u) ** 2 + 1.0 / (rho - u) ** 2)


@pytest.mark.parametrize("lam,rho", [(1.0, 0.4), (np.pi, 0.9 * np.pi), (1.0, 0.0)])
def test_bump_derivative_sup_against_closed_form(lam, rho):
    u = np.linspace(rho, lam, 2**18 + 1)[1:-1]
    d1 = _bump_first_derivative(u, lam, rho)
    assert window_derivative_sup(bump(lam, rho), 1) == pytest.approx(np.max(np.abs(d1)), rel=1e-5)
    # second derivative: centred difference of the exact first derivative
    h = 1e-6 * (lam - rho)
    d2 = (_bump_first_derivative(u + h, lam, rho) - _bump_first_derivative(u - h, lam, rho)) / (2 * h)
    inner = (u > rho + 2 * h) & (u < lam - 2 * h)
    assert window_derivative_sup(bump(lam, rho), 2) == pytest.approx(
        np.max(np.abs(d2[inner])), rel=1e-4)


@pytest.mark.parametrize("kind,rho", [("hann", 0.0), ("tukey", 0.6), ("tukey", 0.0), ("bump", 0.6)])
def test_smooth_pieces_tile_support_and_agree(kind, rho):
    w = WindowSpec.from_frame(kind, AnalysisFrame(0.0, 1.5, rho))
    pieces = smooth_pieces(w)
    assert pieces[0][0] == -1.5 and pieces[-1][1] == 1.5
    assert all(p[1] == q[0] for p, q in zip(pieces, pieces[1:]))
    for a, b, g in pieces:
        u = np.linspace(a, b, 257)[1:-1]
        np.testing.assert_allclose(g(u), window_eval(w, u), atol=1e-15)
    with pytest.raises(NotImplementedError):
        smooth_pieces(WindowSpec("rectangular", AnalysisFrame(0.0, 1.0)))
