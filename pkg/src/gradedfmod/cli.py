"""Command-line entry point: ``gradedfmod {theorem,roundtrip,zero-fuzz,walkthrough}``.

Every command prints a report (JSON by default) and exits 0 when all checks
pass, 1 when a check fails and 2 on invalid parameters.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import checks
from .errors import ParseError
from .extension import default_precision, splitting_search, walkthrough
from .field import get_field, is_prime
from .modules import e_from_fraction, e_is_zero_cech
from .poly import Poly, format_monomial, format_poly, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class VerificationReport:
    command: str
    parameters: dict
    checks: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    elapsed_ms: int | None = None

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def add(self, name: str, ok: bool, witness: str | None = None, **extra) -> None:
        if any(c["name"] == name for c in self.checks):
            raise ValueError(f"duplicate check {name!r}")
        entry = {"name": name, "status": "pass" if ok else "fail", **extra}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    def add_result(self, res: checks.CheckResult, prefix: str = "") -> None:
        d = res.as_dict()
        name = f"{prefix}{d.pop('name')}"
        status = d.pop("status")
        self.add(name, status == "pass", d.pop("witness", None), **d)

    def as_dict(self) -> dict:
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "checks": self.checks,
            "status": "pass" if self.passed else "fail",
        }
        if self.warnings:
            out["warnings"] = self.warnings
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"  [{c['status'].upper()}] {c['name']}"
            if "witness" in c:
                line += f"  witness: {c['witness']}"
            lines.append(line)
        lines.extend(f"  warning: {w}" for w in self.warnings)
        if self.elapsed_ms is not None:
            lines.append(f"  elapsed: {self.elapsed_ms} ms")
        return "\n".join(lines) + "\n"


def _field(args):
    if not is_prime(args.p):
        raise UsageError(f"p = {args.p} is not prime")
    if args.e < 1:
        raise UsageError(f"extension degree e = {args.e} must be >= 1")
    return get_field(args.p, args.e)


def _trials(args, report: VerificationReport) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be >= 0")
    if args.trials == 0:
        report.warnings.append("trials = 0: property checks pass vacuously")
    return args.trials


def cmd_theorem(args) -> VerificationReport:
    _field(args)
    if args.alpha_max < 0:
        raise UsageError("--alpha-max must be >= 0")
    precision = max(args.precision or 0, default_precision(args.p, args.alpha_max))
    report = VerificationReport(
        "theorem",
        {"p": args.p, "e": args.e, "alpha_max": args.alpha_max, "precision": precision, "workers": args.workers},
    )
    search = splitting_search(args.p, args.e, args.alpha_max, precision=precision, workers=args.workers)
    witnesses = search.splitting_witnesses
    report.add(
        "no candidate splitting commutes with the structure maps",
        search.certified,
        "; ".join(f"alpha={c.alpha}, t={c.t}" for c in witnesses) or None,
        candidates=len(search.candidates),
        rejected=len(search.candidates) - len(witnesses),
    )
    bad = [c for c in search.candidates if c.consistent is False]
    report.add(
        "closed-form obstruction equals the computed defect",
        not bad,
        "; ".join(f"alpha={c.alpha}, t={c.t}: defect {c.defect} vs {c.obstruction}" for c in bad) or None,
    )
    for alpha in (0, 1):
        walk = walkthrough(args.p, alpha, e=args.e, precision=precision)
        failed = [s for s in walk.stages if not s.match]
        report.add(
            f"worked computation alpha={alpha}, t={walk.t}",
            walk.ok,
            "; ".join(f"{s.name}: got {s.computed}, expected {s.expected}" for s in failed) or None,
            stages=len(walk.stages),
        )
    return report


def cmd_roundtrip(args) -> VerificationReport:
    F = _field(args)
    precision = args.precision or 64
    if precision < 1:
        raise UsageError("--precision must be >= 1")
    report = VerificationReport(
        "roundtrip",
        {"p": args.p, "e": args.e, "degree": args.degree, "precision": precision, "seed": args.seed, "trials": args.trials},
    )
    n = _trials(args, report)
    report.add_result(checks.psi_phi_roundtrip(F, n, args.seed, args.degree, precision))
    report.add_result(checks.phi_psi_roundtrip(F, n, args.seed + 1, args.degree, precision))
    for res in checks.structure_roundtrips(F, n, args.seed + 2, precision):
        report.add_result(res, prefix="roundtrip ")
    return report


def cmd_zero_fuzz(args) -> VerificationReport:
    F = _field(args)
    report = VerificationReport("zero-fuzz", {"p": args.p, "e": args.e, "seed": args.seed, "trials": args.trials})
    n = _trials(args, report)
    report.add_result(checks.zero_test_agreement(F, n, args.seed))
    x = Poly.x(F)
    for h, A, B, expect in ((x, 2, 1, False), (x * x, 2, 1, True)):
        normal = e_from_fraction(h, A, B).is_zero()
        cech = e_is_zero_cech(h, A, B)
        label = f"{format_poly(h)}/({format_monomial(A, B)}) is {'zero' if expect else 'nonzero'}"
        report.add(label, normal == cech == expect, None if normal == cech == expect else f"normal form {normal}, Cech {cech}")
    return report


def cmd_walkthrough(args) -> VerificationReport:
    F = _field(args)
    if args.alpha < 0:
        raise UsageError("--alpha must be >= 0")
    t = Poly.monomial(F, 0, args.alpha) if args.t is None else parse_poly(args.t, F)
    precision = max(args.precision or 0, default_precision(args.p, max(args.alpha, 1)))
    try:
        walk = walkthrough(args.p, args.alpha, t, e=args.e, precision=precision)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = VerificationReport(
        "walkthrough", {"p": args.p, "e": args.e, "alpha": args.alpha, "t": walk.t, "precision": precision}
    )
    for s in walk.stages:
        report.add(s.name, s.match, None if s.match else f"got {s.computed}, expected {s.expected}", value=s.computed)
    return report


COMMANDS = {
    "theorem": cmd_theorem,
    "roundtrip": cmd_roundtrip,
    "zero-fuzz": cmd_zero_fuzz,
    "walkthrough": cmd_walkthrough,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="characteristic (prime)")
    common.add_argument("--e", type=int, default=1, help="coefficient field GF(p^e) (default 1)")
    common.add_argument("--precision", type=int, default=None, help="coefficients kept per Hom element (default 64)")
    common.add_argument("--out", help="write the report here instead of stdout")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="json", action="store_true", default=True, help="JSON report (default)")
    fmt.add_argument("--text", dest="json", action="store_false", help="human-readable report")
    common.add_argument("--no-timing", action="store_true", help="omit elapsed time so reports are byte-stable")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="gradedfmod", description="Exact checks for graded F-modules over k[x, y].")
    sub = parser.add_subparsers(dest="command", required=True)

    th = sub.add_parser("theorem", parents=[common], help="exhaustive search for a splitting")
    th.add_argument("--alpha-max", type=int, default=3)
    th.add_argument("--workers", type=int, default=1)

    rt = sub.add_parser("roundtrip", parents=[common, seeded], help="duality and structure-map roundtrips")
    rt.add_argument("--degree", type=int, default=None, help="fixed degree (default: random in [-10, 2])")
    rt.add_argument("--trials", type=int, default=200)

    zf = sub.add_parser("zero-fuzz", parents=[common, seeded], help="normal-form vs Cech zero test")
    zf.add_argument("--trials", type=int, default=500)

    wk = sub.add_parser("walkthrough", parents=[common], help="every intermediate of the worked computation")
    wk.add_argument("--alpha", type=int, default=0)
    wk.add_argument("--t", default=None, help='polynomial t of degree alpha, e.g. "y^2 + x*y" (default y^alpha)')
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, str, bool]:
    """Run a command; returns ``(exit code, rendered report, written to --out)``."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (UsageError, ParseError) as exc:
        return EXIT_USAGE, f"error: {exc}\n", False
    if not args.no_timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    text = report.to_json() if args.json else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return (EXIT_OK if report.passed else EXIT_FAIL), text, bool(args.out)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, text, written = run(argv)
    except SystemExit as exc:  # argparse has already printed usage
        return EXIT_USAGE if exc.code else EXIT_OK
    if code == EXIT_USAGE:
        sys.stderr.write(text)
    elif not written:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
