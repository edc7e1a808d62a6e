"""Command-line harness: coefficient tables, reconstructions, error tables, plots.

Every option can also come from a flat ``key = value`` file passed with
``--config``; keys are the long flag names without dashes (``lambda``,
``bigN``, ``n_list`` ...). Command-line flags win over the file.

Exit codes: 0 success, 2 configuration error, 3 an error-table row fell
outside its envelope band.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
import argparse
import csv
import io
import math
import os
import sys

import numpy as np

from . import bounds
from .corpus import FUNCTIONS, PRESETS
from .reconstruct import measure_errors, partial_sum, write_error_csv
from .spectral import QuadratureGrid, coefficients_fft, extended_coefficients
from .svg import emit_svg_lineplot
from .windows import KINDS, AnalysisFrame, WindowSpec

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ENVELOPE = 3

DEFAULT_N_LIST = tuple(range(1, 21)) + (30, 50, 100, 200)
ENVELOPE_S = 1
RECON_POINTS = 2049
ERROR_EXTRA_COLUMNS = ("sup_err_sq", "envelope_l2_lo", "envelope_l2_hi", "l_s", "window")


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved, validated parameters of one CLI invocation."""

    preset: str | None = None
    function: str = "saw"
    windows: tuple = ("bump",)
    lam: float = math.pi
    rho: float = 0.9 * math.pi
    alpha: float | None = None
    t: float = 0.0
    m: int = 2**12
    N: int = 2**14
    k_max: int = 512
    n_list: tuple = DEFAULT_N_LIST
    n: int = 10
    rho_eval: float | None = None
    grid_points: int = 2**16 + 1
    output_dir: str | None = None
    emit_plots: bool = False
    s_max: int = 12

    @property
    def frame(self):
        return AnalysisFrame(self.t, self.lam, self.rho)

    @property
    def grid(self):
        return QuadratureGrid(self.frame, self.m, self.N)

    def window(self, kind):
        alpha = self.alpha if kind == "tukey" else None
        return WindowSpec.from_frame(kind, self.frame, alpha=alpha)

    @property
    def eval_half_width(self):
        return self.rho if self.rho_eval is None else self.rho_eval

    def validate(self, command=None):
        """Build every derived object once so bad input fails before any work.

        Order limits are checked only for the commands that use them:
        ``n_list`` for ``errors``/``experiment``, ``n`` for
        ``reconstruct``/``experiment`` (``None`` checks both).
        """
        try:
            if self.function not in FUNCTIONS:
                raise ValueError(f"unknown function {self.function!r}; choose from {sorted(FUNCTIONS)}")
            grid = self.grid
            for kind in self.windows:
                if kind not in KINDS:
                    raise ValueError(f"unknown window {kind!r}; choose from {KINDS}")
                self.window(kind)
            if not 0 <= self.k_max <= grid.m // 2:
                raise ValueError(f"kmax must lie in [0, m/2 = {grid.m // 2}], got {self.k_max}")
            if not self.n_list or min(self.n_list) < 1:
                raise ValueError("n_list must be a non-empty list of positive integers")
            if self.n < 0:
                raise ValueError(f"n must be >= 0, got {self.n}")
            if command in (None, "errors", "experiment") and max(self.n_list) > self.k_max:
                raise ValueError(f"n_list orders must not exceed kmax = {self.k_max}")
            if command in (None, "reconstruct", "experiment") and self.n > self.k_max:
                raise ValueError(f"n = {self.n} must not exceed kmax = {self.k_max}")
            if not 0 <= self.eval_half_width < self.lam:
                raise ValueError(f"rho_eval must lie in [0, lambda), got {self.eval_half_width}")
            if self.grid_points < 3 or self.grid_points % 2 == 0:
                raise ValueError(f"grid must be an odd integer >= 3, got {self.grid_points}")
            if self.s_max < 1:
                raise ValueError(f"s_max must be >= 1, got {self.s_max}")
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self


# ---------------------------------------------------------------- config

def _parse_bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_int_list(text):
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    return tuple(int(v) for v in str(text).replace(" ", "").split(",") if v)


def _parse_int(text):
    value = float(text)
    if not value.is_integer():
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


# key -> (RunConfig field, parser)
_KEYS = {
    "preset": ("preset", str),
    "function": ("function", str),
    "window": ("windows", lambda v: tuple(w for w in str(v).replace(" ", "").split(",") if w)),
    "lambda": ("lam", float),
    "rho": ("rho", float),
    "alpha": ("alpha", float),
    "t": ("t", float),
    "m": ("m", _parse_int),
    "bigN": ("N", _parse_int),
    "kmax": ("k_max", _parse_int),
    "n_list": ("n_list", _parse_int_list),
    "n": ("n", _parse_int),
    "rho_eval": ("rho_eval", float),
    "grid": ("grid_points", _parse_int),
    "out": ("output_dir", str),
    "plots": ("emit_plots", _parse_bool),
    "s_max": ("s_max", _parse_int),
}


def read_config_file(path):
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}; known keys: {sorted(_KEYS)}")
        values[key] = value
    return values


def resolve_config(options, command=None):
    """Merge defaults, preset, config file and flags (in increasing priority).

    ``options`` maps raw keys (as in :data:`_KEYS`) to strings or parsed
    values; ``config`` names the file to read.
    """
    options = dict(options)
    merged = {}
    if options.get("config"):
        merged.update(read_config_file(options.pop("config")))
    options.pop("config", None)
    merged.update({k: v for k, v in options.items() if v is not None})

    fields = {}
    for key, value in merged.items():
        name, parse = _KEYS[key]
        try:
            fields[name] = parse(value) if isinstance(value, str) else value
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}") from None

    preset_name = fields.get("preset")
    base = RunConfig()
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise ConfigError(f"unknown preset {preset_name!r}; choose from {sorted(PRESETS)}")
        p = PRESETS[preset_name]
        base = replace(base, preset=preset_name, function=p.function.name, windows=tuple(p.windows),
                       lam=p.frame.lam, rho=p.frame.rho, t=p.frame.t, n=p.recon_n)
    if "windows" in fields and not fields["windows"]:
        raise ConfigError("window must name at least one window kind")
    try:
        cfg = replace(base, **fields)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return cfg.validate(command)


# ---------------------------------------------------------------- computation

def _write_text(text, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)
    return path


def error_rows(cfg, kind, coeffs=None):
    """Error-table rows for one window, with floor constants and envelopes.

    Envelopes use the measured ``L_s`` (``s = 1``) of ``psi * w`` and are
    left empty for the rectangular window, which is not smooth.
    """
    psi = FUNCTIONS[cfg.function]
    w = cfg.window(kind)
    if coeffs is None:
        coeffs = coefficients_fft(psi, w, cfg.grid, max(cfg.n_list))
    rho_eval = cfg.eval_half_width
    reports = measure_errors(psi, coeffs, cfg.n_list, rho_eval, cfg.grid_points)
    k_inf = bounds.k_inf_constant(psi, w, rho_eval, cfg.grid_points)
    k2 = bounds.k2_constant(psi, w, rho_eval, cfg.grid_points)
    L = None if kind == "rectangular" else bounds.measured_lipschitz(psi, w, ENVELOPE_S)
    rows = []
    for rep in reports:
        row = {"n": rep.n, "sup_err": rep.sup_error, "l2_err_sq": rep.l2_error_sq,
               "k_inf": k_inf, "k_2": k2, "sup_err_sq": rep.sup_error**2, "window": kind}
        if L is not None:
            lo, hi = bounds.sup_error_envelope(k_inf, L, ENVELOPE_S, rep.n)
            llo, lhi = bounds.l2_error_envelope(k2, k_inf, L, rho_eval, ENVELOPE_S, rep.n)
            row.update(envelope_sup_lo=lo, envelope_sup_hi=hi,
                       envelope_l2_lo=llo, envelope_l2_hi=lhi, l_s=L)
        rows.append(row)
    return rows


def envelope_violations(rows):
    """Rows whose sup or squared-L2 error lies outside its band."""
    bad = []
    for row in rows:
        if row.get("envelope_sup_lo") is None:
            continue
        if not row["envelope_sup_lo"] <= row["sup_err"] <= row["envelope_sup_hi"]:
            bad.append(row)
        elif not row["envelope_l2_lo"] <= row["l2_err_sq"] <= row["envelope_l2_hi"]:
            bad.append(row)
    return bad


def bounds_table(s_max):
    """CSV text ``s,K_s,K_s_upper,ratio,ln_Ks,ln_stirling`` for ``s = 1..s_max``.

    The binomial upper bound is defined from ``s = 2``; its cells are empty at ``s = 1``.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["s", "K_s", "K_s_upper", "ratio", "ln_Ks", "ln_stirling"])
    for s in range(1, s_max + 1):
        ks = bounds.ks_closed(s)
        if s >= 2:
            up = bounds.ks_upper(s)
            ratio = up / ks
            up_text = str(up.numerator) if up.denominator == 1 else f"{up.numerator}/{up.denominator}"
            ratio_text = f"{ratio.numerator}/{ratio.denominator}"
        else:
            up_text = ratio_text = ""
        writer.writerow([s, ks, up_text, ratio_text, f"{bounds.ks_log_exact(s):.17g}",
                         f"{bounds.ks_log_approx(s):.17g}"])
    return buf.getvalue()


def reconstruction_table(cfg, coeff_sets, n):
    """CSV text with ``x, psi`` and one ``R_n`` column per window."""
    psi = FUNCTIONS[cfg.function]
    t, lam = cfg.t, cfg.lam
    x = np.linspace(t - lam, t + lam, RECON_POINTS)
    cols = [np.real(partial_sum(c, n, x)) for c in coeff_sets.values()]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "psi"] + [f"R_{kind}" for kind in coeff_sets])
    target = psi(x)
    for i in range(x.size):
        writer.writerow([f"{x[i]:.17g}", f"{target[i]:.17g}"] + [f"{c[i]:.17g}" for c in cols])
    return buf.getvalue()


def _positive_series(x, y):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    keep = (x > 0) & (y > 0)
    return x[keep], y[keep]


def run_experiment(cfg):
    """Write every artifact for ``cfg`` and return ``(paths, violations)``.

    Windows are processed in parallel; each writes only its own files, so
    results are identical to a sequential run.
    """
    out = cfg.output_dir or "."
    try:
        os.makedirs(out, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from None
    psi = FUNCTIONS[cfg.function]
    stem = cfg.preset or cfg.function

    def one_window(kind):
        w = cfg.window(kind)
        coeffs = coefficients_fft(psi, w, cfg.grid, cfg.k_max)
        rows = error_rows(cfg, kind, coeffs)
        cpath = os.path.join(out, f"{stem}_coeffs_{kind}.csv")
        coeffs.to_csv(cpath)
        epath = os.path.join(out, f"{stem}_errors_{kind}.csv")
        write_error_csv(rows, epath, ERROR_EXTRA_COLUMNS)
        return kind, coeffs, rows, [cpath, epath]

    with ThreadPoolExecutor(max_workers=len(cfg.windows)) as pool:
        results = list(pool.map(one_window, cfg.windows))

    paths, violations, coeff_sets, all_rows = [], [], {}, {}
    for kind, coeffs, rows, written in results:
        paths.extend(written)
        violations.extend(envelope_violations(rows))
        coeff_sets[kind] = coeffs
        all_rows[kind] = rows

    rpath = os.path.join(out, f"{stem}_reconstruction_n{cfg.n}.csv")
    paths.append(_write_text(reconstruction_table(cfg, coeff_sets, cfg.n), rpath))

    if cfg.emit_plots:
        decay, errs = {}, {}
        for kind, coeffs in coeff_sets.items():
            ks = np.arange(1, cfg.k_max + 1)
            decay[kind] = _positive_series(ks, np.abs(coeffs.integer_values(ks)))
            n = [r["n"] for r in all_rows[kind]]
            errs[kind] = _positive_series(n, [r["sup_err"] for r in all_rows[kind]])
        errs = {k: v for k, v in errs.items() if v[0].size}
        ref_k = np.arange(1, cfg.k_max + 1, dtype=float)
        decay["1/k^2"] = (ref_k, ref_k**-2.0)
        paths.append(emit_svg_lineplot(decay, os.path.join(out, f"{stem}_coeffs.svg"), True, True,
                                       f"{stem}: coefficient decay", "k", "|c(k)|"))
        if errs:
            paths.append(emit_svg_lineplot(errs, os.path.join(out, f"{stem}_errors.svg"), True, True,
                                           f"{stem}: sup error on the plateau", "n", "sup error"))
        x = np.linspace(cfg.t - cfg.lam, cfg.t + cfg.lam, RECON_POINTS)
        curves = {"psi": (x, psi(x))}
        for kind, coeffs in coeff_sets.items():
            curves[f"R_{cfg.n} {kind}"] = (x, np.real(partial_sum(coeffs, cfg.n, x)))
        paths.append(emit_svg_lineplot(curves, os.path.join(out, f"{stem}_reconstruction.svg"),
                                       title=f"{stem}: reconstruction, n = {cfg.n}", xlabel="x"))
    return paths, violations


# ---------------------------------------------------------------- argparse

def _global_options(suppress):
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--config", default=default, help="flat key = value file (flags win)")
    g.add_argument("--preset", default=default, help=f"one of {sorted(PRESETS)}")
    g.add_argument("--function", default=default, help=f"one of {sorted(FUNCTIONS)}")
    g.add_argument("--lambda", dest="lambda", default=default, help="half-length of the interval")
    g.add_argument("--rho", default=default, help="bump plateau half-length")
    g.add_argument("--alpha", default=default, help="Tukey taper fraction")
    g.add_argument("--t", default=default, help="interval centre")
    g.add_argument("--window", default=default, help=f"comma-separated subset of {KINDS}")
    g.add_argument("--m", default=default, help="trapezoid nodes (power of two)")
    g.add_argument("--bigN", default=default, help="DFT length (power of two, >= m)")
    g.add_argument("--kmax", default=default, help="largest frequency written")
    g.add_argument("--n", default=default, help="partial-sum order for reconstructions")
    g.add_argument("--n-list", dest="n_list", default=default, help="comma-separated orders")
    g.add_argument("--rho-eval", dest="rho_eval", default=default, help="evaluation half-width")
    g.add_argument("--grid", default=default, help="odd number of evaluation points")
    g.add_argument("--s-max", dest="s_max", default=default, help="largest s in the bounds table")
    g.add_argument("--out", default=default, help="output directory (stdout when omitted)")
    g.add_argument("--plots", default=default, action="store_const", const="true",
                   help="also write SVG plots")
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bumpfourier", parents=[_global_options(False)],
        description="Windowed Fourier coefficients, reconstructions and error bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_options(True)]
    sub.add_parser("coeffs", parents=common, help="coefficient table xi,re,im,abs2")
    sub.add_parser("reconstruct", parents=common, help="partial sums on the whole interval")
    sub.add_parser("errors", parents=common, help="error-vs-n table with envelopes")
    sub.add_parser("bounds", parents=common, help="exact K_s table")
    sub.add_parser("extended", parents=common, help="coefficients at fractional frequencies")
    exp = sub.add_parser("experiment", parents=common, help="run a named experiment preset")
    exp.add_argument("name", choices=sorted(PRESETS))
    return parser


def _emit(text, cfg, filename, stdout):
    if cfg.output_dir:
        os.makedirs(cfg.output_dir, exist_ok=True)
        path = _write_text(text, os.path.join(cfg.output_dir, filename))
        print(path, file=stdout)
    else:
        stdout.write(text)


def _dispatch(args, stdout):
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "name")}
    if args.command == "experiment":
        opts["preset"] = args.name
    cfg = resolve_config(opts, args.command)
    # single-window commands use the first window only
    kind = cfg.windows[0]

    if args.command == "bounds":
        _emit(bounds_table(cfg.s_max), cfg, "bounds.csv", stdout)
        return EXIT_OK
    psi = FUNCTIONS[cfg.function]
    if args.command == "coeffs":
        coeffs = coefficients_fft(psi, cfg.window(kind), cfg.grid, cfg.k_max)
        _emit(coeffs.to_csv(), cfg, f"coeffs_{kind}.csv", stdout)
        return EXIT_OK
    if args.command == "extended":
        coeffs = extended_coefficients(psi, cfg.window(kind), cfg.grid)
        buf = io.StringIO()
        coeffs.to_csv(buf)
        lines = buf.getvalue().splitlines(keepends=True)
        keep = [lines[0]] + [ln for ln, xi in zip(lines[1:], coeffs.frequencies) if xi <= cfg.k_max]
        _emit("".join(keep), cfg, f"extended_{kind}.csv", stdout)
        return EXIT_OK
    if args.command == "reconstruct":
        coeffs = {k: coefficients_fft(psi, cfg.window(k), cfg.grid, cfg.n) for k in cfg.windows}
        _emit(reconstruction_table(cfg, coeffs, cfg.n), cfg, f"reconstruction_n{cfg.n}.csv", stdout)
        return EXIT_OK
    if args.command == "errors":
        rows = error_rows(cfg, kind)
        buf = io.StringIO()
        write_error_csv(rows, buf, ERROR_EXTRA_COLUMNS)
        _emit(buf.getvalue(), cfg, f"errors_{kind}.csv", stdout)
        return _report_violations(envelope_violations(rows))
    # experiment
    paths, violations = run_experiment(cfg)
    for path in paths:
        print(path, file=stdout)
    return _report_violations(violations)


def _report_violations(violations):
    for row in violations:
        print(f"envelope violation: window={row['window']} n={row['n']} "
              f"sup_err={row['sup_err']:.6g} band=[{row['envelope_sup_lo']:.6g}, "
              f"{row['envelope_sup_hi']:.6g}] l2_err_sq={row['l2_err_sq']:.6g} "
              f"band=[{row['envelope_l2_lo']:.6g}, {row['envelope_l2_hi']:.6g}]", file=sys.stderr)
    return EXIT_ENVELOPE if violations else EXIT_OK


def main(argv=None, stdout=None):
    """Entry point; returns the process exit code."""
    stdout = sys.stdout if stdout is None else stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        return _dispatch(args, stdout)
    except ConfigError as exc:
        print(f"bumpfourier: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
