"""Command-line interface.

Certificates are written as JSON to stdout (or ``--out``); a one-line
summary goes to stderr.  Exit codes: 0 pass, 1 verified failure, 2 usage
error.  ``SIEGELMULT_TOL`` sets the default ``--tol``.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from . import certificates as certs
from .cocycle import ARGUMENT, PETERSSON, CocycleRoundingError, ContinuationError, w_cocycle
from .genus1 import TableError, w_exact_genus1
from .multipliers import (
    MULTIPLIER_TOL,
    MultiplierError,
    SeriesTruncation,
    TruncationError,
    delta_multiplier,
    theta_multiplier,
    verify_multiplier_relation,
)
from .sampling import random_sl2, random_theta_word
from .symplectic import GenusMismatch, SymplecticError, SymplecticMatrix, parse_literal
from .winding import w_cocycle_exact

TOL_ENV = "SIEGELMULT_TOL"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env_tol() -> float | None:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return tol


def _tol(args, default: float) -> float:
    tol = args.tol if args.tol is not None else _env_tol()
    tol = default if tol is None else tol
    if not tol > 0:
        raise UsageError("--tol must be positive")
    return tol


def _matrix(text: str | None, flag: str) -> SymplecticMatrix:
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return parse_literal(text)
    except (SymplecticError, OSError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _or(value, default):
    return default if value is None else value


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise UsageError(f"{name} must be >= 1")
    return value


def _search_bound(args) -> int:
    return _positive("--bound", _or(args.bound, certs.arithmetic.DEFAULT_SEARCH_BOUND))


def _emit(args, payload: str, summary: str, ok: bool) -> int:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    print(("PASS " if ok else "FAIL ") + summary, file=sys.stderr)
    return EXIT_PASS if ok else EXIT_FAIL


def _emit_cert(args, cert: certs.Certificate) -> int:
    summary = f"{cert.claim}: {len(cert.steps)} steps"
    if not cert.passed:
        first = cert.failures()[0]
        summary += f"; first failing step: {first.description} (computed {first.computed}, expected {first.expected})"
    elif cert.conclusion:
        summary += f"; {cert.conclusion}"
    return _emit(args, cert.to_json(), summary, cert.passed)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------

def cmd_w(args) -> int:
    M, N = _matrix(args.m, "--m"), _matrix(args.n, "--n")
    if M.g != N.g:
        raise UsageError(f"--m has genus {M.g}, --n has genus {N.g}")
    tol = _tol(args, 1e-6)
    if args.exact:
        if M.g != 1:
            raise UsageError("--exact is only available in genus 1")
        w, residual, route = w_exact_genus1(M, N, args.convention), 0.0, "table"
    elif args.rational:
        val = w_cocycle_exact(M, N, args.convention)
        w, residual, route = val.w, val.residual, "rational"
    else:
        try:
            val = w_cocycle(M, N, args.convention, guard=tol)
        except CocycleRoundingError as exc:
            print(f"FAIL residual guard: {exc}", file=sys.stderr)
            return EXIT_FAIL
        w, residual, route = val.w, val.residual, "continuation"
    out = f"w={w}\nresidual={residual:.3e}\n"
    return _emit(args, out, f"w({M}, {N}) = {w} [{args.convention}, {route}]", True)


def cmd_lemma(args) -> int:
    if args.tag not in certs.LEMMA_TAGS:
        raise UsageError(f"unknown tag {args.tag!r}; choose from {', '.join(certs.LEMMA_TAGS)}")
    return _emit_cert(args, certs.verify_lemma(args.tag, _positive("--samples", _or(args.samples, 100)), args.seed))


def cmd_deligne(args) -> int:
    q = _or(args.q, 4)
    if q % 4 or q <= 0:
        raise UsageError("--q must be a positive multiple of 4")
    return _emit_cert(args, certs.deligne_certificate(q, _search_bound(args)))


def cmd_krons(args) -> int:
    q = _or(args.q, 4)
    if q % 4 or q <= 0:
        raise UsageError("--q must be a positive multiple of 4")
    if (args.c is None) != (args.d is None):
        raise UsageError("give both --c and --d or neither")
    return _emit_cert(args, certs.krons_certificate(q, _search_bound(args), args.c, args.d))


def cmd_zpir(args) -> int:
    M = _matrix(args.m, "--m")
    try:
        return _emit_cert(args, certs.zpir_check(M, _or(args.q, 4)))
    except certs.PreconditionError as exc:
        raise UsageError("precondition violated: " + "; ".join(exc.violations)) from None


def cmd_bms(args) -> int:
    n = _positive("--samples", _or(args.samples, 10))
    rng = random.Random(f"bms:{args.seed}")
    bound = _positive("--bound", _or(args.bound, 1000))
    cert = certs.Certificate(claim="bms")
    certs.bms_w_check(certs.BmsParameters(5, 1, 4, 1, 1, 4, 1), cert)
    for _ in range(n - 1):
        certs.bms_w_check(certs.random_bms_parameters(rng, bound, nonzero=True), cert)
    cert.conclusion = f"{n} parameter tuples: " + cert.conclusion
    return _emit_cert(args, cert)


def cmd_identities(args) -> int:
    return _emit_cert(args, certs.small_identities(args.seed, _positive("--samples", _or(args.samples, 5))))


def cmd_mennicke(args) -> int:
    q = _or(args.q, 4)
    if q % 4 or q <= 0:
        raise UsageError("--q must be a positive multiple of 4")
    return _emit_cert(args, certs.mennicke_axiom_check(q, _positive("--samples", _or(args.samples, 10)), args.seed))


def _relation_payload(kind: str, r: float, report, single: dict | None) -> dict:
    out = {"multiplier": kind, "r": r, "pairs": str(len(report.deviations)),
           "worst_deviation": report.worst, "tol": report.tol, "pass": report.passed,
           "failures": [{"m": m, "n": n, "deviation": d} for m, n, d in report.failures()]}
    if single is not None:
        out["matrix"] = single
    return out


def cmd_theta(args) -> int:
    tol = _tol(args, MULTIPLIER_TOL)
    trunc = SeriesTruncation(args.trunc) if args.trunc else None
    rng = random.Random(f"theta:{args.seed}")

    def ev(X):
        return theta_multiplier(X, trunc=trunc)

    single = None
    if args.matrix:
        M = _matrix(args.matrix, "--matrix")
        e = theta_multiplier(M, trunc=trunc, strict=False)
        single = {"m": str(M), "value": [e.value.real, e.value.imag], "deviation": e.deviation}
    n = _positive("--samples", _or(args.samples, 100))
    pairs = [(random_theta_word(rng), random_theta_word(rng)) for _ in range(n)]
    report = verify_multiplier_relation(ev, 0.5, pairs, tol)
    ok = report.passed and (single is None or single["deviation"] < tol)
    return _emit(args, _json(_relation_payload("theta", 0.5, report, single)),
                 f"theta r=1/2 on {n} pairs, worst deviation {report.worst:.2e}", ok)


def cmd_delta(args) -> int:
    tol = _tol(args, MULTIPLIER_TOL)
    r = 0.3 if args.r is None else args.r
    rng = random.Random(f"delta:{args.seed}")
    single = None
    if args.matrix:
        M = _matrix(args.matrix, "--matrix")
        if M.g != 1:
            raise UsageError("--matrix must be 2x2")
        e = delta_multiplier(r, M)
        single = {"m": str(M), "value": [e.value.real, e.value.imag], "deviation": e.deviation}
    n = _positive("--samples", _or(args.samples, 100))
    pairs = [(random_sl2(rng), random_sl2(rng)) for _ in range(n)]
    report = verify_multiplier_relation(lambda X: delta_multiplier(r, X), r, pairs, tol)
    return _emit(args, _json(_relation_payload("delta", r, report, single)),
                 f"delta r={r} on {n} pairs, worst deviation {report.worst:.2e}", report.passed)


def cmd_replay(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
        results = certs.replay(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot replay {args.file}: {exc}") from None
    bad = [r for r in results if not r.reproduced]
    recorded_pass = bool(data.get("pass", False))
    payload = _json({"claim": data.get("claim"), "steps": str(len(results)),
                     "reproduced": not bad, "recorded_pass": recorded_pass,
                     "mismatches": [{"index": str(r.index), "description": r.description} for r in bad]})
    return _emit(args, payload, f"replayed {len(results)} steps, {len(bad)} mismatches",
                 not bad and recorded_pass)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--q", type=int)
    common.add_argument("--bound", type=int)
    common.add_argument("--out", help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(prog="siegelmult", description="Cocycles, multipliers and certificates for Sp(g, Z).")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("w", parents=[common], help="cocycle w(M, N)")
    w.add_argument("--m", required=True)
    w.add_argument("--n", required=True)
    route = w.add_mutually_exclusive_group()
    route.add_argument("--exact", action="store_true", help="genus-1 sign table")
    route.add_argument("--numeric", action="store_true", help="path continuation (default)")
    route.add_argument("--rational", action="store_true", help="exact base image and polynomial roots")
    w.add_argument("--convention", choices=(ARGUMENT, PETERSSON), default=ARGUMENT)
    w.set_defaults(func=cmd_w)

    lem = sub.add_parser("lemma", parents=[common], help="randomized check of a special cocycle value")
    lem.add_argument("tag")
    lem.set_defaults(func=cmd_lemma)

    for name, func, text in (("deligne", cmd_deligne, "weight constraint certificate"),
                             ("identities", cmd_identities, "exact matrix identities"),
                             ("mennicke", cmd_mennicke, "Mennicke axioms for the theta symbols"),
                             ("bms", cmd_bms, "seven-matrix relation and its w-values")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.set_defaults(func=func)

    k = sub.add_parser("krons", parents=[common], help="square-root chain for (c/d) = 1")
    k.add_argument("--c", type=int)
    k.add_argument("--d", type=int)
    k.set_defaults(func=cmd_krons)

    z = sub.add_parser("zpir", parents=[common], help="the (c/d) = -1 case for one matrix")
    z.add_argument("--m", required=True)
    z.set_defaults(func=cmd_zpir)

    for name, func in (("theta", cmd_theta), ("delta", cmd_delta)):
        sp = sub.add_parser(name, parents=[common], help=f"{name} multiplier relation report")
        sp.add_argument("--r", type=float)
        sp.add_argument("--matrix", "--m", dest="matrix")
        sp.add_argument("--trunc", type=int, help="box truncation radius for theta sums")
        sp.set_defaults(func=func)

    rp = sub.add_parser("replay", parents=[common], help="re-run every step of a certificate file")
    rp.add_argument("file")
    rp.set_defaults(func=cmd_replay)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GenusMismatch, SymplecticError, TableError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (certs.SearchExhausted, MultiplierError, TruncationError, ContinuationError,
            CocycleRoundingError, ArithmeticError) as exc:
        print(f"FAIL {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
