"""``punct-metrics`` command line: ``dist``, ``constants`` and ``verify``.

Exit codes: 0 success, 1 failing verification checks, 2 usage or parse
errors, 3 domain errors, 4 numeric failures.
"""
import argparse
import json
import math
import sys
from pathlib import Path

from .errors import DomainError, NumericError
from .halfplane_oracle import hyp_dist_thrice_punctured
from .modular_cover import C0, K0, k_of_rho
from .punctured_disk import INV_E, hyp_dist_punctured_disk, metric_D
from .sphere_metrics import INF, comparability_constants, dist_dX, dist_eX, load_configuration
from .verify import SUITE_NAMES, run_suite, write_offenders_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3, 4
KINDS = ("dX", "eX", "hDstar", "hC01", "D")


class UsageError(Exception):
    pass


def parse_point(text: str) -> complex:
    """Parse ``"re+imi"`` style input (``"0.5"``, ``"-1+2i"``, ``"3i"``) or ``"inf"``."""
    s = text.strip().lower().replace(" ", "")
    if s in ("inf", "+inf", "infinity"):
        return INF
    if not s or "n" in s:
        raise UsageError(f"cannot parse point {text!r}")
    try:
        w = complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse point {text!r}") from None
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise UsageError(f"cannot parse point {text!r}")
    return w


def _load(path):
    try:
        return load_configuration(path)
    except DomainError:
        raise
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read configuration {path!r}: {exc}") from None


def cmd_dist(args) -> int:
    w1, w2 = parse_point(args.w1), parse_point(args.w2)
    if args.kind in ("dX", "eX"):
        if args.config is None:
            raise UsageError(f"kind {args.kind} needs --config")
        config, mob = _load(args.config)
        w1, w2 = mob(w1), mob(w2)
        if args.kind == "dX":
            value = dist_dX(config, w1, w2, args.tol)
        else:
            value = dist_eX(config, w1, w2)
    elif args.kind == "hDstar":
        value = hyp_dist_punctured_disk(w1, w2)
    elif args.kind == "hC01":
        value = hyp_dist_thrice_punctured(w1, w2, args.tol)
    else:
        value = metric_D(w1, w2)
    print(f"{value:#.12g}")
    return EXIT_OK


def constants_table(rho: float = INV_E, config=None) -> list[tuple[str, float]]:
    c = k_of_rho(rho)
    rows = [("rho", rho), ("r", c.r), ("mu", c.mu), ("eta1", c.eta1), ("delta", c.delta),
            ("K", c.K), ("exp(K)", math.exp(c.K)), ("C0", C0), ("K0", K0)]
    if config is None:
        cc = None
        M1 = 2.0 * (C0 + K0 + 1.0)
        M2 = 2.0 * (C0 + 1.0)
        rows += [("M1", M1), ("M2", M2), ("M0", M1 + M2)]
    else:
        cc = comparability_constants(config)
        rows += [("M1", cc.M1), ("M2", cc.M2), ("M0", cc.M0), ("U1", cc.U1), ("U2", cc.U2),
                 ("B1", cc.B1), ("B2", cc.B2), ("N1", cc.N1), ("N2'", cc.N2p),
                 ("N2''", cc.N2pp), ("N2", cc.N2)]
    return rows


def cmd_constants(args) -> int:
    config = _load(args.config)[0] if args.config else None
    for name, value in constants_table(args.rho, config):
        print(f"{name:<8} {value:#.12g}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    report = run_suite(args.suite, seed=args.seed, samples=args.samples)
    out = Path(args.out)
    out.write_text(json.dumps(report.as_json(), indent=2) + "\n")
    write_offenders_csv(report, out.with_suffix(".offenders.csv"))
    for rec in report.checks:
        status = "PASS" if rec.passed else "FAIL"
        print(f"{status} {rec.id} samples={rec.samples} worst_slack={rec.worst_slack:.3e}")
    print(f"report written to {out}")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="punct-metrics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distance between two points")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("w1")
    p.add_argument("w2")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--tol", type=float, default=1e-10, metavar="X")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("constants", help="print the constant table")
    p.add_argument("--rho", type=float, default=INV_E)
    p.add_argument("--config", metavar="PATH")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("verify", help="run invariant suites and write a JSON report")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--samples", type=int, default=1000, metavar="N")
    p.add_argument("--out", default="report.json", metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
