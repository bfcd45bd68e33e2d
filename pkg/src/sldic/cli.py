"""Command-line front end.

Exit codes: 0 success, 2 verification failure, 3 unsupported regime,
4 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis
from .channel import ChannelParams
from .errors import ConsistencyError, ParameterError, SldicError, UnsupportedCaseError
from .rates import formula_rate, sweep
from .schemes import build, validate_budget

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_UNSUPPORTED = 3
EXIT_USAGE = 4

CSV_HEADER = ["C", "rate_num", "rate_den", "rate", "regime", "verified"]

# configurations drawn in the paper's scheme figures, with their caption rates
SHOWCASE = [
    (4, 2, 0, "2"),
    (4, 2, 2, "4"),
    (5, 4, 0, "2"),
    (5, 4, 1, "3"),
    (5, 4, 4, "5"),
    (2, 4, 2, "5/2"),
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    command: str
    m: int = 0
    n: int = 0
    C: int = 0
    cmax: int = 0
    out: str | None = None
    format: str = "text"
    max_states: int = analysis.DEFAULT_MAX_STATES
    seed: int = 0
    random_checks: int = 0


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sldic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def channel_flags(p, need_c=True):
        p.add_argument("--m", type=_nonneg, required=True, help="direct-link levels")
        p.add_argument("--n", type=_nonneg, required=True, help="cross-link levels")
        if need_c:
            p.add_argument("--c", dest="C", type=_nonneg, default=0,
                           help="cooperative link capacity (bits per channel use)")

    def common(p, formats, default):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--max-states", type=_nonneg, default=analysis.DEFAULT_MAX_STATES,
                       help="largest state space checked by exhaustive enumeration")

    p = sub.add_parser("encode", help="dump the generator matrices of a scheme")
    channel_flags(p)
    common(p, ["json", "structured-text"], "json")

    p = sub.add_parser("verify", help="build a scheme and certify secrecy and decodability")
    channel_flags(p)
    common(p, ["text", "json", "structured-text"], "text")

    p = sub.add_parser("rate", help="closed-form achievable secrecy rate")
    channel_flags(p)
    common(p, ["text", "json", "structured-text"], "text")

    p = sub.add_parser("sweep", help="rate against cooperation capacity, as CSV")
    channel_flags(p, need_c=False)
    p.add_argument("--cmax", type=_nonneg, required=True)
    common(p, ["csv", "json", "structured-text"], "csv")

    p = sub.add_parser("demo", help="rebuild and verify the paper's showcase schemes")
    p.add_argument("--out", default="sldic-demo", help="directory for scheme dumps")
    p.add_argument("--max-states", type=_nonneg, default=analysis.DEFAULT_MAX_STATES)
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the randomized rank/enumeration cross-check")
    p.add_argument("--random-checks", type=_nonneg, default=100)
    return parser


def parse_config(argv) -> CliConfig:
    ns = make_parser().parse_args(argv)
    fmt = getattr(ns, "format", "text")
    if fmt == "structured-text":
        fmt = "json"
    return CliConfig(
        command=ns.command,
        m=getattr(ns, "m", 0),
        n=getattr(ns, "n", 0),
        C=getattr(ns, "C", 0),
        cmax=getattr(ns, "cmax", 0),
        out=ns.out,
        format=fmt,
        max_states=ns.max_states,
        seed=getattr(ns, "seed", 0),
        random_checks=getattr(ns, "random_checks", 0),
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def run_encode(cfg: CliConfig) -> int:
    scheme = build(ChannelParams(cfg.m, cfg.n, cfg.C))
    _emit(json.dumps(scheme.to_dict(), indent=2) + "\n", cfg.out)
    return EXIT_OK


def run_verify(cfg: CliConfig) -> int:
    scheme = build(ChannelParams(cfg.m, cfg.n, cfg.C))
    report = analysis.verify(scheme, cfg.max_states)
    budget = validate_budget(scheme)
    status = "ok" if report.ok and budget else "fail"
    reasons = report.failures() + ([] if budget else ["cooperative budget violated"])
    if cfg.format == "json":
        doc = {"status": status, "reasons": reasons, "scheme": scheme.to_dict(),
               "report": report.to_dict()}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [
            f"{scheme.params} regime={scheme.regime} R_S={scheme.rate}",
            f"decodable: receiver1={_yn(report.decodable_1)} receiver2={_yn(report.decodable_2)}",
            f"I(W1;y2)={report.mi_bits_1} bits  I(W2;y1)={report.mi_bits_2} bits",
            f"method={report.method} states={report.state_count}",
            f"status={status}" + (" reason=" + "; ".join(reasons) if reasons else ""),
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK if status == "ok" else EXIT_VERIFY


def run_rate(cfg: CliConfig) -> int:
    p = ChannelParams(cfg.m, cfg.n, cfg.C)
    rate = formula_rate(p)
    if cfg.format == "json":
        _emit(json.dumps({"params": {"m": p.m, "n": p.n, "C": p.C},
                          "rate": rate.as_text()}) + "\n", cfg.out)
    else:
        _emit(f"{p} R_S={rate}\n", cfg.out)
    return EXIT_OK


def sweep_csv(m: int, n: int, cmax: int, max_states: int = analysis.DEFAULT_MAX_STATES) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for pt in sweep(m, n, cmax, max_states=max_states):
        if pt.rate is None:
            writer.writerow([pt.C, "", "", "", pt.regime, pt.verified])
        else:
            writer.writerow([pt.C, pt.rate.numerator, pt.rate.denominator,
                             repr(float(pt.rate.value)), pt.regime, pt.verified])
    return buf.getvalue()


def run_sweep(cfg: CliConfig) -> int:
    if cfg.format == "json":
        rows = [{"C": pt.C, "rate": None if pt.rate is None else pt.rate.as_text(),
                 "regime": str(pt.regime), "supported": pt.supported,
                 "verified": pt.verified, "conjecture": pt.conjecture}
                for pt in sweep(cfg.m, cfg.n, cfg.cmax, max_states=cfg.max_states)]
        _emit(json.dumps(rows, indent=2) + "\n", cfg.out)
    else:
        _emit(sweep_csv(cfg.m, cfg.n, cfg.cmax, cfg.max_states), cfg.out)
    return EXIT_OK


def run_demo(cfg: CliConfig) -> int:
    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    failed = False
    for m, n, C, caption in SHOWCASE:
        scheme = build(ChannelParams(m, n, C))
        report = analysis.verify(scheme, cfg.max_states)
        good = report.ok and validate_budget(scheme) and str(scheme.rate) == caption
        failed |= not good
        print(f"m={m} n={n} C={C} R_S={scheme.rate} caption={caption} "
              f"secret={_yn(report.secret_1 and report.secret_2)} "
              f"decodable={_yn(report.decodable_1 and report.decodable_2)} "
              f"method={report.method} {'PASS' if good else 'FAIL'}")
        dump = {"scheme": scheme.to_dict(), "report": report.to_dict()}
        (out_dir / f"scheme_m{m}_n{n}_C{C}.json").write_text(json.dumps(dump, indent=2) + "\n")

    if cfg.random_checks:
        rng = np.random.default_rng(cfg.seed)
        for _ in range(cfg.random_checks):
            # verify raises ConsistencyError if the two routes disagree
            analysis.verify(analysis.random_scheme(rng), cfg.max_states)
        print(f"rank/enumeration agreement on {cfg.random_checks} random schemes "
              f"(seed {cfg.seed}): PASS")
    return EXIT_VERIFY if failed else EXIT_OK


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


COMMANDS = {
    "encode": run_encode,
    "verify": run_verify,
    "rate": run_rate,
    "sweep": run_sweep,
    "demo": run_demo,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg)
    except UnsupportedCaseError as exc:
        print(json.dumps({"status": "unsupported", "regime": str(exc.regime),
                          "reason": str(exc)}))
        return EXIT_UNSUPPORTED
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SldicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
