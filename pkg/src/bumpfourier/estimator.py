"""scikit-learn style estimator wrapping the windowed Fourier series."""

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_int
from .reconstruct import measure_errors, reconstruct
from .spectral import QuadratureGrid, coefficients_fft
from .windows import AnalysisFrame, SampledFunction, WindowSpec


def _as_column(X, name="X"):
    X = check_array(X, ensure_2d=False, dtype=float, input_name=name)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"{name} must have a single feature, got {X.shape[1]}")
        X = X[:, 0]
    return X


class WindowedFourierSeries(RegressorMixin, BaseEstimator):
    """Windowed Fourier series of a 1-D signal on ``(t - lam, t + lam)``.

    ``fit`` computes the coefficients ``c(k)``, ``|k| <= k_max``, of
    ``psi(x) w(x - t)`` by the FFT-assembled trapezoid rule; ``predict``
    evaluates the partial sum of order ``n_terms``. Inside the window's
    plateau the prediction approximates ``psi`` itself.

    Parameters
    ----------
    window : {"bump", "hann", "tukey", "rectangular"}
    lam : float
        Half-length of the analysis interval.
    rho : float
        Plateau half-length of the bump; used to derive ``alpha`` for Tukey
        when ``alpha`` is None.
    alpha : float or None
        Tukey taper fraction.
    t : float
        Centre of the analysis interval.
    n_terms : int
        Order of the partial sum used by ``predict``.
    k_max : int or None
        Largest stored frequency (defaults to ``n_terms``).
    m, N : int
        Trapezoid nodes and DFT length (powers of two, ``N >= m``).

    Attributes
    ----------
    window_ : WindowSpec
    grid_ : QuadratureGrid
    coef_set_ : CoefficientSet
    coef_ : ndarray of complex, shape (2 * k_max + 1,)
    frequencies_ : ndarray of int
    n_features_in_ : int
    """

    def __init__(self, window="bump", lam=np.pi, rho=0.0, alpha=None, t=0.0,
                 n_terms=10, k_max=None, m=2**12, N=2**14):
        self.window = window
        self.lam = lam
        self.rho = rho
        self.alpha = alpha
        self.t = t
        self.n_terms = n_terms
        self.k_max = k_max
        self.m = m
        self.N = N

    def _setup(self):
        frame = AnalysisFrame(self.t, self.lam, self.rho)
        window = WindowSpec.from_frame(self.window, frame, alpha=self.alpha)
        grid = QuadratureGrid(frame, self.m, self.N)
        n_terms = check_int(self.n_terms, "n_terms", minimum=0)
        k_max = n_terms if self.k_max is None else check_int(self.k_max, "k_max", minimum=0)
        if k_max < n_terms:
            raise ValueError(f"k_max={k_max} must be >= n_terms={n_terms}")
        return window, grid, k_max

    def _fit_callable(self, psi):
        window, grid, k_max = self._setup()
        self.window_ = window
        self.grid_ = grid
        self.coef_set_ = coefficients_fft(psi, window, grid, k_max)
        self.coef_ = self.coef_set_.values
        self.frequencies_ = self.coef_set_.frequencies.astype(int)
        self.n_features_in_ = 1
        return self

    def fit(self, X, y):
        """Fit from a uniform sample table covering ``[t - lam, t + lam]``.

        Samples are linearly interpolated at the trapezoid nodes, so at least
        ``m + 1`` of them are required.
        """
        x = _as_column(X)
        y = check_array(y, ensure_2d=False, dtype=float, input_name="y").ravel()
        if x.shape[0] != y.shape[0]:
            raise ValueError(f"X and y have inconsistent lengths {x.shape[0]} and {y.shape[0]}")
        order = np.argsort(x, kind="stable")
        return self._fit_callable(SampledFunction(x[order], y[order]))

    def fit_function(self, psi):
        """Fit from a vectorised callable evaluated exactly at the nodes."""
        if not callable(psi):
            raise TypeError("psi must be callable")
        return self._fit_callable(psi)

    def predict(self, X):
        """Real part of the partial sum of order ``n_terms`` at ``X``."""
        check_is_fitted(self, "coef_set_")
        x = _as_column(X)
        return reconstruct(self.coef_set_, self.n_terms, x)

    def error_report(self, psi, n_list=None, rho_eval=None, grid_points=2**16 + 1):
        """Sup/L2 reconstruction errors against ``psi`` on the plateau."""
        check_is_fitted(self, "coef_set_")
        if n_list is None:
            n_list = [self.n_terms]
        if rho_eval is None:
            rho_eval = self.rho
        return measure_errors(psi, self.coef_set_, n_list, rho_eval, grid_points)
