"""Command-line front end: ``hbloch <subcommand> ...``.

Exit codes: 0 success, 2 bad config or arguments, 3 symbol rejected
(not a self-map, touches the circle, or an unbounded ratio), 4 a verify or
cross-check run failed its tolerances, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .approx import sandwich
from .disk import SamplingScheme
from .errors import ConfigParse, NearBoundarySymbol, ParameterDomain, ResourceLimit, SelfMapViolation
from .essnorm import RatioField, bounded_sup, boundedness_power_test
from .norms import DEFAULT_SCHEME, norm, seminorm
from .report import (DEFAULT_SUITE, ESTIMATORS, DivergenceError, ExperimentConfig, cross_check,
                     cross_check_rows, estimator_rows, fmt, parse_config, parse_function,
                     render_rows, run_experiment, verify_lemma1)
from .symbols import parse_symbol

EXIT_OK, EXIT_CONFIG, EXIT_SYMBOL, EXIT_CHECK, EXIT_IO = 0, 2, 3, 4, 5

SUITES = {"default": DEFAULT_SUITE}


def _floats(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigParse(f"expected comma-separated numbers, got {text!r}") from None


def _scheme(args) -> SamplingScheme:
    return DEFAULT_SCHEME.with_(radial_levels=args.radial_levels, angular_base=args.angular_base)


def _emit(text, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_norm(args):
    f = parse_function(args.f_spec)
    res = seminorm(f, args.alpha, _scheme(args))
    total = norm(f, args.alpha, _scheme(args))
    w = res.witness.value
    print(f"norm={fmt(total)} seminorm={fmt(res.value)} witness={fmt(w.real)}{w.imag:+.17g}j")
    return EXIT_OK


def cmd_essnorm(args):
    phi = parse_symbol(args.symbol)
    est = tuple(e.strip() for e in args.estimators.split(",") if e.strip())
    cfg = ExperimentConfig((args.symbol,), (args.alpha,), est, _scheme(args), args.ladder_N,
                           args.output, args.format)
    rows = estimator_rows(phi, args.alpha, cfg.estimators, cfg.ladder_N, cfg.scheme)
    if not args.traces:
        rows = [r for r in rows if r.index == -1.0]
    _emit(render_rows(rows, args.format, {"config": cfg.echo(), "version": __version__}), args.output)
    return EXIT_OK


def cmd_bounded(args):
    phi = parse_symbol(args.symbol)
    b = bounded_sup(RatioField(phi, args.alpha), _scheme(args))
    p = boundedness_power_test(phi, args.alpha, args.ladder_N, _scheme(args))
    print(f"bounded_sup={fmt(b.value)} flags={'|'.join(b.flags) or '-'}")
    print(f"power_sup={fmt(p.sup_estimate)} slope={fmt(p.slope)} bounded={p.bounded}")
    if "divergent" in b.flags:
        raise DivergenceError("ratio grows toward the boundary; C_phi looks unbounded")
    return EXIT_OK


def cmd_verify_lemma1(args):
    rows, band, ok = verify_lemma1(args.n_max, _floats(args.alphas))
    worst = {}
    for r in rows:
        if r.alpha not in worst or r.rel_err > worst[r.alpha].rel_err:
            worst[r.alpha] = r
    print("alpha  worst_n  worst_rel_err  band_limit_numeric  band_limit_closed  band_rel_err")
    for a, r in worst.items():
        num, lim, err = band[a]
        print(f"{a:<6g} {r.n:<8d} {r.rel_err:<14.3e} {num:<19.12g} {lim:<18.12g} {err:.3e}")
    first = [r for r in rows if r.n == 1]
    for r in first:
        print(f"n=1 alpha={r.alpha:g}: r={fmt(r.r_closed)} max={fmt(r.max_closed)}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_CHECK


def cmd_cross_check(args):
    if args.suite not in SUITES:
        raise ConfigParse(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    res = cross_check(SUITES[args.suite], args.ladder_N, _scheme(args))
    meta = {"suite": args.suite, "ladder_N": args.ladder_N, "version": __version__,
            "scheme": {"radial_levels": args.radial_levels, "angular_base": args.angular_base}}
    _emit(render_rows(cross_check_rows(res), args.format, meta), args.output)
    failed = [r for r in res if not r.passed]
    for r in failed:
        print(f"FAIL {r.symbol_id} alpha={r.alpha:g}: |E1-E2|={r.gap12:.3e} |E1-E3|={r.gap13:.3e}",
              file=sys.stderr)
    return EXIT_CHECK if failed else EXIT_OK


def cmd_sandwich(args):
    phi = parse_symbol(args.symbol)
    s = sandwich(phi, args.alpha, args.n, args.ladder_N, _scheme(args))
    print(f"lower={fmt(s.lower.value)} upper_indicator={fmt(s.upper.value)} E1={fmt(s.E1)} "
          f"contraction_gap={fmt(s.contraction_gap)} flags={'|'.join(s.upper.flags)}")
    print("coherent" if s.coherent else "incoherent")
    return EXIT_OK if s.coherent else EXIT_CHECK


def cmd_run(args):
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    cfg = parse_config(text)
    if args.output:
        cfg = ExperimentConfig(cfg.symbols, cfg.alpha_values, cfg.estimators, cfg.scheme,
                               cfg.ladder_N, args.output, cfg.format)
    out, summary = run_experiment(cfg, write=bool(cfg.output_path))
    if cfg.output_path:
        for r in summary:
            print(f"{r.symbol_id}\talpha={fmt(r.alpha)}\t{r.estimator}\t{fmt(r.value)}\t{r.flags}")
    else:
        sys.stdout.write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hbloch", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, alpha=True):
        if alpha:
            sp.add_argument("--alpha", type=float, default=1.0)
        sp.add_argument("--radial-levels", type=int, default=DEFAULT_SCHEME.radial_levels)
        sp.add_argument("--angular-base", type=int, default=DEFAULT_SCHEME.angular_base)

    sp = sub.add_parser("norm", help="alpha-Bloch norm of a harmonic function")
    sp.add_argument("f_spec")
    common(sp)
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("essnorm", help="essential-norm estimators for C_phi")
    sp.add_argument("symbol")
    sp.add_argument("--estimators", default="E1,E2,E3", help=",".join(ESTIMATORS))
    sp.add_argument("--ladder-N", dest="ladder_N", type=int, default=2048)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output")
    sp.add_argument("--traces", action="store_true", help="include per-index trace rows")
    common(sp)
    sp.set_defaults(func=cmd_essnorm)

    sp = sub.add_parser("bounded", help="boundedness diagnostics for C_phi")
    sp.add_argument("symbol")
    sp.add_argument("--ladder-N", dest="ladder_N", type=int, default=2048)
    common(sp)
    sp.set_defaults(func=cmd_bounded)

    sp = sub.add_parser("verify-lemma1", help="closed-form extremals against the numerical oracle")
    sp.add_argument("--n-max", type=int, default=200)
    sp.add_argument("--alphas", default="0.5,1,2,3")
    sp.set_defaults(func=cmd_verify_lemma1)

    sp = sub.add_parser("cross-check", help="E1/E2/E3 agreement over a symbol suite")
    sp.add_argument("--suite", default="default")
    sp.add_argument("--ladder-N", dest="ladder_N", type=int, default=2048)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output")
    common(sp, alpha=False)
    sp.set_defaults(func=cmd_cross_check)

    sp = sub.add_parser("sandwich", help="weak-null lower bound vs dilation-average upper indicator")
    sp.add_argument("symbol")
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--ladder-N", dest="ladder_N", type=int, default=2048)
    common(sp)
    sp.set_defaults(func=cmd_sandwich)

    sp = sub.add_parser("run", help="run an experiment config file")
    sp.add_argument("config")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigParse, ParameterDomain, ResourceLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SelfMapViolation, NearBoundarySymbol, DivergenceError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SYMBOL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
