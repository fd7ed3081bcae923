"""Batch experiments: config parsing, estimator suites and deterministic CSV/JSON reports.

Config files are plain ``key = value`` lines; ``#`` starts a comment.  Symbols
use the symbol grammar and may be given one per ``symbol =`` line or joined
with ``;`` under ``symbols =``::

    symbols = identity; dilation s=0.9
    symbol = automorphism a=0.5
    alpha = 0.5, 1
    estimators = E1, E2, E3
    ladder_N = 2048
    radial_levels = 40
    output = report.csv
    format = csv
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .approx import sandwich
from .disk import SamplingScheme
from .errors import ConfigParse, HBlochError, ParameterDomain
from .essnorm import (RatioField, bounded_below_margin, bounded_sup, boundedness_power_test,
                      essnorm_boundary, essnorm_power, essnorm_threshold)
from .extremal import H_band_limit, H_extremals
from .harmonic import HarmonicFunction
from .norms import DEFAULT_SCHEME
from .oracles import golden_section_max, numerical_band_limit
from .symbols import Symbol, parse_map, parse_symbol, weak_null_function

__all__ = [
    "ESTIMATORS",
    "ExperimentConfig",
    "ReportRow",
    "parse_config",
    "parse_function",
    "run_experiment",
    "render_rows",
    "Lemma1Row",
    "verify_lemma1",
    "DEFAULT_SUITE",
    "CrossCheckRow",
    "cross_check",
    "cross_check_rows",
    "fmt",
]

ESTIMATORS = ("E1", "E2", "E3", "bounded_sup", "power_boundedness", "margin", "sandwich")
_SCHEME_KEYS = ("radial_levels", "angular_base", "angular_growth", "refinement_rounds",
                "seed", "jitter", "max_points")


def fmt(x: float) -> str:
    """17 significant digits; Python's formatting rounds half to even on the exact binary value."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class ExperimentConfig:
    symbols: tuple
    alpha_values: tuple
    estimators: tuple = ("E1", "E2", "E3")
    scheme: SamplingScheme = DEFAULT_SCHEME
    ladder_N: int = 2048
    output_path: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if not self.symbols:
            raise ConfigParse("config needs at least one symbol")
        if not self.alpha_values:
            raise ConfigParse("config needs at least one alpha")
        if not self.estimators:
            raise ConfigParse("config needs at least one estimator")
        for a in self.alpha_values:
            if not (a > 0 and math.isfinite(a)):
                raise ConfigParse(f"alpha must be positive, got {a!r}")
        bad = [e for e in self.estimators if e not in ESTIMATORS]
        if bad:
            raise ConfigParse(f"unknown estimators {bad}; choose from {list(ESTIMATORS)}")
        if self.ladder_N < 16:
            raise ConfigParse("ladder_N must be >= 16")
        if self.format not in ("csv", "json"):
            raise ConfigParse("format must be csv or json")

    def echo(self) -> dict:
        return {
            "symbols": list(self.symbols),
            "alpha_values": list(self.alpha_values),
            "estimators": list(self.estimators),
            "scheme": asdict(self.scheme),
            "ladder_N": self.ladder_N,
            "format": self.format,
        }


def _floats(text: str, key: str):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigParse(f"{key}: expected comma-separated numbers, got {text!r}") from None


def parse_config(text: str) -> ExperimentConfig:
    symbols, kw, scheme_kw = [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParse(f"line {lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.lower()
        if key in ("symbol", "symbols"):
            symbols += [s.strip() for s in value.split(";") if s.strip()]
        elif key in ("alpha", "alphas", "alpha_values"):
            kw["alpha_values"] = _floats(value, key)
        elif key == "estimators":
            kw["estimators"] = tuple(e.strip() for e in value.split(",") if e.strip())
        elif key in ("ladder_n", "n"):
            kw["ladder_N"] = _int(value, key)
        elif key in ("output", "output_path"):
            kw["output_path"] = value
        elif key == "format":
            kw["format"] = value.lower()
        elif key in _SCHEME_KEYS:
            if key in ("angular_growth", "jitter"):
                scheme_kw[key] = _floats(value, key)[0]
            else:
                scheme_kw[key] = _int(value, key)
        else:
            raise ConfigParse(f"line {lineno}: unknown key {key!r}")
    try:
        scheme = SamplingScheme(**scheme_kw)
    except ParameterDomain as exc:
        raise ConfigParse(str(exc)) from None
    return ExperimentConfig(symbols=tuple(symbols), scheme=scheme,
                            alpha_values=kw.pop("alpha_values", ()), **kw)


def _int(text, key):
    try:
        return int(text)
    except ValueError:
        raise ConfigParse(f"{key}: expected an integer, got {text!r}") from None


# ---- harmonic function specs ------------------------------------------------

_CONJ = re.compile(r"^conj\((.*)\)$")


def parse_function(text: str) -> HarmonicFunction:
    """``znbar n=5``, ``<map>``, ``conj(<map>)`` or ``<map> + conj(<map>)``.

    Maps use the symbol grammar without the self-map check, so ``identity ^ 5``
    is ``z^5`` and ``poly coeffs=[0, 2]`` is ``2z``.
    """
    t = " ".join(text.split())
    m = re.fullmatch(r"znbar\s+n\s*=\s*(\d+)", t)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ConfigParse("znbar needs n >= 1")
        return HarmonicFunction.znbar(n)
    head, sep, tail = t.partition(" + conj(")
    if sep:
        if not tail.endswith(")"):
            raise ConfigParse(f"unbalanced conj( in {text!r}")
        return HarmonicFunction(parse_map(head)[0], parse_map(tail[:-1])[0])
    c = _CONJ.match(t)
    if c:
        return HarmonicFunction.antianalytic(parse_map(c.group(1))[0])
    return HarmonicFunction.analytic(parse_map(t)[0])


# ---- rows -------------------------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    symbol_id: str
    alpha: float
    estimator: str
    index: float
    value: float
    flags: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value >= 0):
            raise HBlochError(f"{self.estimator} produced a non-finite or negative value {self.value!r}")

    def key(self):
        return (self.symbol_id, self.alpha, self.estimator, self.index)


COLUMNS = ("symbol_id", "alpha", "estimator", "index", "value", "flags")


def _flags(*groups) -> str:
    return "|".join(f for g in groups for f in g)


def _trace_rows(sid, a, name, trace, flags=""):
    return [ReportRow(sid, a, name, float(i), float(v), flags) for i, v in trace]


def _summary(sid, a, name, value, flags=()):
    return ReportRow(sid, a, name, -1.0, float(value), _flags(("summary",), flags))


def _margin_dictionary(alpha, N):
    return [weak_null_function(n, alpha) for n in (1, 2, 4, 8, 16, 64, 256, N)]


def estimator_rows(phi: Symbol, alpha: float, estimators, N: int, scheme: SamplingScheme):
    """All rows (trace points then summary) for one symbol at one alpha."""
    sid, rows = phi.label, []
    fld = RatioField(phi, alpha)
    for name in estimators:
        if name == "E1":
            e = essnorm_threshold(fld, scheme=scheme)
            rows += _trace_rows(sid, alpha, name, e.trace) + [_summary(sid, alpha, name, e.value, e.flags)]
        elif name == "E2":
            e = essnorm_boundary(fld, scheme.radial_levels)
            rows += _trace_rows(sid, alpha, name, e.trace) + [_summary(sid, alpha, name, e.value, e.flags)]
        elif name == "E3":
            e = essnorm_power(phi, alpha, N, scheme)
            rows += _trace_rows(sid, alpha, name, e.trace) + [_summary(sid, alpha, name, e.value, e.flags)]
        elif name == "bounded_sup":
            b = bounded_sup(fld, scheme)
            if "divergent" in b.flags:
                raise DivergenceError(f"{sid}: ratio grows toward the boundary at alpha={alpha}; "
                                      "C_phi looks unbounded")
            rows += _trace_rows(sid, alpha, name, b.shell_profile)
            rows.append(_summary(sid, alpha, name, b.value, b.flags))
        elif name == "power_boundedness":
            p = boundedness_power_test(phi, alpha, N, scheme)
            rows += _trace_rows(sid, alpha, name, p.trace)
            rows.append(_summary(sid, alpha, name, p.sup_estimate,
                                 ("bounded" if p.bounded else "unbounded", f"slope={fmt(p.slope)}")))
        elif name == "margin":
            d = _margin_dictionary(alpha, N)
            m = bounded_below_margin(phi, alpha, d, scheme)
            rows.append(_summary(sid, alpha, name, m.value, (f"argmin={m.index}",)))
        elif name == "sandwich":
            s = sandwich(phi, alpha, N=N, scheme=scheme)
            rows += _trace_rows(sid, alpha, "sandwich_lower", s.lower.trace)
            rows.append(_summary(sid, alpha, "sandwich_lower", s.lower.value))
            rows += _trace_rows(sid, alpha, "sandwich_upper", s.upper.trace, "dictionary-surrogate")
            rows.append(_summary(sid, alpha, "sandwich_upper", s.upper.value, s.upper.flags))
    return rows


class DivergenceError(HBlochError):
    """An estimator detected growth where a finite limit was expected."""


def render_rows(rows: Sequence[ReportRow], fmt_name: str = "csv", metadata: Optional[dict] = None) -> str:
    rows = sorted(rows, key=ReportRow.key)
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([r.symbol_id, fmt(r.alpha), r.estimator, fmt(r.index), fmt(r.value), r.flags])
        return buf.getvalue()
    records = [{"symbol_id": r.symbol_id, "alpha": r.alpha, "estimator": r.estimator,
                "index": r.index, "value": r.value, "flags": r.flags} for r in rows]
    return json.dumps({"metadata": metadata or {}, "rows": records}, indent=1, sort_keys=True) + "\n"


def run_experiment(config: ExperimentConfig, write: bool = True):
    """Run every (symbol, alpha, estimator) and return ``(text, summary rows)``.

    Symbols are validated up front, so a bad symbol fails before any work.
    """
    symbols = [parse_symbol(s) for s in config.symbols]
    rows = []
    for phi in symbols:
        for a in config.alpha_values:
            rows += estimator_rows(phi, a, config.estimators, config.ladder_N, config.scheme)
    meta = {"config": config.echo(), "seeds": {"scheme": config.scheme.seed, "dictionary": 0},
            "version": __version__}
    text = render_rows(rows, config.format, meta)
    if write and config.output_path:
        Path(config.output_path).write_text(text)
    summary = sorted((r for r in rows if r.index == -1.0), key=ReportRow.key)
    return text, summary


# ---- extremal table -------------------------------------------------------

@dataclass(frozen=True)
class Lemma1Row:
    n: int
    alpha: float
    r_closed: float
    r_oracle: float
    max_closed: float
    max_oracle: float
    rel_err: float
    passed: bool


def _rel(a, b):
    return abs(a - b) if b == 0 else abs(a - b) / abs(b)


def verify_lemma1(n_max: int = 200, alphas=(0.5, 1.0, 2.0, 3.0), tol: float = 1e-9,
                  band_n: int = 10_000):
    """Closed-form maximiser and maximum against the golden-section oracle.

    Returns ``(rows, band, passed)`` where ``band`` maps alpha to
    ``(numerical n^a * band_min at band_n, (2a/e)^a, relative error)``.
    """
    if n_max < 2:
        raise ParameterDomain("n_max must be >= 2")
    rows = []
    for a in alphas:
        for n in range(1, n_max + 1):
            ex = H_extremals(n, a)
            xo, mo = golden_section_max(n, a)
            err = max(_rel(ex.r, xo), _rel(ex.max_value, mo))
            rows.append(Lemma1Row(n, float(a), ex.r, xo, ex.max_value, mo, err, err <= tol))
    band = {}
    for a in alphas:
        num, lim = numerical_band_limit(a, band_n), H_band_limit(a)
        band[float(a)] = (num, lim, _rel(num, lim))
    passed = all(r.passed for r in rows) and all(v[2] <= 1e-2 for v in band.values())
    return rows, band, passed


# ---- cross-check ------------------------------------------------------------

DEFAULT_SUITE = (
    ("identity", (0.5, 1.0, 2.0)),
    ("rotation theta=0.7", (0.5, 1.0, 2.0)),
    ("dilation s=0.5", (0.5, 1.0, 2.0)),
    ("dilation s=0.9", (0.5, 1.0, 2.0)),
    ("automorphism a=0.5", (1.0,)),
    ("automorphism a=-0.3+0.4i", (1.0,)),
    ("blaschke zeros=[0.3, -0.5i]", (1.0,)),
)


@dataclass(frozen=True)
class CrossCheckRow:
    symbol_id: str
    alpha: float
    E1: float
    E2: float
    E3: float
    gap12: float
    gap13: float
    passed: bool
    flags: tuple = field(default=())


def cross_check(suite=DEFAULT_SUITE, N: int = 2048, scheme: Optional[SamplingScheme] = None,
                tol12: float = 1e-3, tol13: float = 0.05):
    """E1, E2, E3 per (symbol, alpha) with pass iff ``|E1-E2| <= tol12`` and ``|E1-E3| <= tol13``."""
    scheme = scheme or DEFAULT_SCHEME
    out = []
    for spec, alphas in suite:
        phi = spec if isinstance(spec, Symbol) else parse_symbol(spec)
        for a in alphas:
            fld = RatioField(phi, a)
            e1 = essnorm_threshold(fld, scheme=scheme)
            e2 = essnorm_boundary(fld, scheme.radial_levels)
            e3 = essnorm_power(phi, a, N, scheme)
            g12, g13 = abs(e1.value - e2.value), abs(e1.value - e3.value)
            out.append(CrossCheckRow(phi.label, float(a), e1.value, e2.value, e3.value, g12, g13,
                                     g12 <= tol12 and g13 <= tol13, e1.flags + e3.flags))
    return out


def cross_check_rows(results: Sequence[CrossCheckRow]):
    rows = []
    for r in results:
        verdict = "pass" if r.passed else "fail"
        for name, v in (("E1", r.E1), ("E2", r.E2), ("E3", r.E3), ("gap_E1_E2", r.gap12),
                        ("gap_E1_E3", r.gap13)):
            rows.append(_summary(r.symbol_id, r.alpha, name, v, (verdict,)))
    return rows
