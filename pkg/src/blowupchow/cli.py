"""Command-line interface.

Subcommands::

    present   dump generators and relations of the presented ring
    betti     graded ranks by one method or all four, with agreement verdict
    degree    exact degree of a top-codimension monomial
    count     brute-force F_q point count vs the closed-form product
    verify    the full cross-verification suite

Exit codes: 0 success, 1 verification failure or internal inconsistency,
2 usage or input error.  Output is deterministic for fixed inputs; the
``json-lines`` format emits one self-describing JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import (BlowupChowError, BudgetExceededError, InhomogeneousError,
                     ParseError, PresentationError, SurfaceError)
from .groebner import normal_form
from .poly import INT, RAT, Generator, Polynomial, mod_p, parse_polynomial
from .pointcount import count_points, default_budget, formula_count, verify_counts
from .presentation import (PresentedRing, betti_groebner, betti_linear_algebra,
                           betti_product, betti_recursion, build_presentation,
                           degree, kunneth_diagonal)
from .surface import load_surface

USAGE_ERROR = 2
CHECK_FAILED = 1


class Emitter:
    """Renders records as aligned text or as json-lines."""

    def __init__(self, fmt: str, out):
        self.fmt = fmt
        self.out = out

    def emit(self, record: dict, text: str):
        if self.fmt == "json-lines":
            print(json.dumps(record, sort_keys=True, separators=(",", ":"),
                             default=str), file=self.out)
        else:
            print(text, file=self.out)


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = None
    m = q
    for cand in range(2, q + 1):
        if cand * cand > m:
            p = m if p is None else p
            break
        if m % cand == 0:
            p = cand
            break
    while q % p == 0:
        q //= p
    return q == 1


def _parse_divisor(text: str):
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"--divisor wants 'i,j', got {text!r}") from exc
    return (i, j)


def _surface(args):
    return load_surface(args.surface)


def _emit_surface(em, s):
    em.emit({"record": "surface", "name": s.name, "k": s.k,
             "M": [list(r) for r in s.M], "K": list(s.K),
             "experimental": s.experimental},
            f"surface {s.name} k {s.k}"
            + (" experimental" if s.experimental else ""))


# ---------------------------------------------------------------------------
# subcommands


def cmd_present(args, em) -> int:
    s = _surface(args)
    ring = build_presentation(s, args.n)
    _emit_surface(em, s)
    em.emit({"record": "n", "n": args.n}, f"n {args.n}")
    em.emit({"record": "section", "name": "generators"}, "generators:")
    for pos, g in enumerate(ring.generators):
        em.emit({"record": "generator", "name": ring.vocab.gen_name(pos),
                 "degree": g.degree},
                f"{ring.vocab.gen_name(pos)} {g.degree}")
    em.emit({"record": "section", "name": "relations"}, "relations:")
    for idx, line in enumerate(ring.relation_lines()):
        em.emit({"record": "relation", "index": idx, "text": line}, line)
    return 0


_BETTI_METHODS = ("groebner", "product", "recursion", "linalg")


def cmd_betti(args, em) -> int:
    s = _surface(args)
    methods = _BETTI_METHODS if args.method == "all" else (args.method,)
    ring = None
    if "groebner" in methods or "linalg" in methods:
        ring = build_presentation(s, args.n)
    tables = {}
    for name in methods:
        try:
            if name == "product":
                tables[name] = betti_product(s, args.n)
            elif name == "recursion":
                tables[name] = betti_recursion(s, args.n)
            elif name == "groebner":
                tables[name] = betti_groebner(ring)
            else:
                kwargs = {"max_cells": args.budget} if args.budget else {}
                tables[name] = betti_linear_algebra(ring, **kwargs)
        except BudgetExceededError as exc:
            em.emit({"record": "error", "method": name, "error": str(exc)},
                    f"betti {name} BUDGET-EXCEEDED {exc}")
            return CHECK_FAILED
        table = tables[name]
        em.emit({"record": "betti", "method": table.method, "n": table.n,
                 "ranks": list(table.ranks)},
                f"betti {table.method} " + " ".join(str(b) for b in table.ranks))
    if args.method == "all":
        ranks = {tuple(t.ranks) for t in tables.values()}
        verdict = "AGREE" if len(ranks) == 1 else "DISAGREE"
        em.emit({"record": "agreement", "verdict": verdict},
                f"agreement {verdict}")
        if verdict != "AGREE":
            return CHECK_FAILED
    return 0


def cmd_degree(args, em) -> int:
    s = _surface(args)
    ring = build_presentation(s, args.n)
    p = parse_polynomial(args.monomial, ring.vocab, INT)
    try:
        value = degree(ring, p)
    except InhomogeneousError as exc:
        raise InhomogeneousError(
            f"{exc}; the degree pairing needs homogeneous degree {2 * args.n}"
        ) from exc
    em.emit({"record": "degree", "monomial": args.monomial, "n": args.n,
             "value": value}, str(value))
    return 0


def cmd_count(args, em) -> int:
    s = _surface(args)
    budget = args.budget if args.budget else default_budget()
    formula = formula_count(s, args.n, args.q)
    if args.divisor:
        constraints = sorted(set(args.divisor))
        try:
            brute = count_points(s, args.n, args.q, constraints,
                                 mode="all", budget=budget)
        except BudgetExceededError:
            em.emit({"record": "divisor-count", "status": "SKIPPED-BRUTE",
                     "divisors": [list(d) for d in constraints]},
                    "divisor count SKIPPED-BRUTE (budget)")
            return 0
        label = " ".join(f"{i},{j}" for (i, j) in constraints)
        em.emit({"record": "divisor-count", "n": args.n, "q": args.q,
                 "divisors": [list(d) for d in constraints], "count": brute},
                f"divisor {label} {brute}")
        return 0
    try:
        brute = count_points(s, args.n, args.q, budget=budget)
    except BudgetExceededError as exc:
        em.emit({"record": "count", "n": args.n, "q": args.q, "brute": None,
                 "formula": exc.formula_count, "status": "SKIPPED-BRUTE"},
                f"total {args.n} {args.q} - {exc.formula_count} SKIPPED-BRUTE")
        return 0
    status = "MATCH" if brute == formula else "MISMATCH"
    em.emit({"record": "count", "n": args.n, "q": args.q, "brute": brute,
             "formula": formula, "status": status},
            f"total {args.n} {args.q} {brute} {formula} {status}")
    return 0 if status == "MATCH" else CHECK_FAILED


# ---------------------------------------------------------------------------
# the verification suite


class Checker:
    def __init__(self, em):
        self.em = em
        self.failures = 0
        self.count = 0

    def check(self, name: str, got, want):
        ok = got == want
        self.count += 1
        if not ok:
            self.failures += 1
        self.em.emit({"record": "check", "name": name, "ok": ok,
                      "got": got, "want": want},
                     (f"PASS {name}" if ok
                      else f"FAIL {name} got={got} want={want}"))
        return ok


def _segre_degree_checks(s, ring):
    """Closed-form expected degrees for the D1_2 pairing checks.

    Pushing D-powers down to the blowup center turns them into Segre classes
    of the center's normal bundle: s0 = 1, s1 = K, s2 = K.K - e(S).  These
    expectations use only the surface lattice, independent of any Groebner
    computation in the ring being verified.
    """
    n = ring.n
    vocab = ring.vocab
    tail = Polynomial.one(vocab, INT)
    for t in range(3, n + 1):
        tail = tail * Polynomial.generator(vocab, Generator("pt", t), INT)
    D = Polynomial.generator(vocab, Generator("D", 1, 2), INT)
    kappa = kunneth_diagonal(s, 1, 2, n)
    kk = s.pair(s.K, s.K)
    checks = [("degree D1_2^4", D ** 4 * tail, -(kk - s.euler)),
              ("degree kunneth^2", kappa * kappa * tail, s.euler),
              ("degree D1_2^2*kunneth-d-part",
               D * D * (kappa
                        - Polynomial.generator(vocab, Generator("pt", 1), INT)
                        - Polynomial.generator(vocab, Generator("pt", 2), INT))
               * tail, -s.k)]
    for a in range(1, s.k + 1):
        expected = sum(s.K[b] * s.M[b][a - 1] for b in range(s.k))
        checks.append((f"degree D1_2^3*d1_{a}",
                       D ** 3 * Polynomial.generator(vocab, Generator("d", 1, a), INT)
                       * tail, expected))
    return checks


def _verify_one(s, n, qs, primes, chk, budget):
    ring = build_presentation(s, n)
    name = f"{s.name} n={n}"
    chk.check(f"{name} generator-count",
              len(ring.generators), n * s.k + n + n * (n - 1) // 2)
    bp = betti_product(s, n)
    chk.check(f"{name} betti recursion=product",
              tuple(betti_recursion(s, n).ranks), tuple(bp.ranks))
    chk.check(f"{name} betti groebner=product",
              tuple(betti_groebner(ring).ranks), tuple(bp.ranks))
    try:
        bl = betti_linear_algebra(ring, max_cells=budget) if budget else \
            betti_linear_algebra(ring)
        chk.check(f"{name} betti linear-algebra=product",
                  tuple(bl.ranks), tuple(bp.ranks))
    except BudgetExceededError as exc:
        chk.check(f"{name} betti linear-algebra=product",
                  f"budget exceeded: {exc}", tuple(bp.ranks))
    for p in primes:
        chk.check(f"{name} hilbert mod {p} = hilbert QQ",
                  tuple(ring.hilbert(mod_p(p))), tuple(ring.hilbert(RAT)))
    # relation membership (normal forms of the stated relation classes)
    gb = ring.groebner_basis(RAT)
    vocab = ring.vocab
    bad = 0
    for rel in ring.ideal:
        if normal_form(rel.with_ring(RAT), gb):
            bad += 1
    for i in range(1, n + 1):
        for a in range(1, s.k + 1):
            da = Polynomial.generator(vocab, Generator("d", i, a), RAT)
            if normal_form(da ** 3, gb):
                bad += 1
    for k3 in range(3, n + 1):
        for j in range(2, k3):
            for i in range(1, j):
                Dij = Polynomial.generator(vocab, Generator("D", i, j), RAT)
                Dik = Polynomial.generator(vocab, Generator("D", i, k3), RAT)
                Djk = Polynomial.generator(vocab, Generator("D", j, k3), RAT)
                if normal_form(Djk * (Dij - Dik), gb):
                    bad += 1
    chk.check(f"{name} relation-membership", bad, 0)
    # degree golden table
    if n >= 1:
        chk.check(f"{name} degree pt1..ptn", degree(ring, ring.point_product()), 1)
    if n >= 2:
        for label, poly, want in _segre_degree_checks(s, ring):
            chk.check(f"{name} {label}", degree(ring, poly), want)
    # point counts
    for q in qs:
        try:
            chk.check(f"{name} q={q} point-count total",
                      count_points(s, n, q, budget=budget), formula_count(s, n, q))
            report = verify_counts(s, n, q, budget=budget)
            for entry in report.entries:
                chk.check(f"{name} q={q} {entry['name']}",
                          entry["got"] if not entry["ok"] else "ok",
                          entry["want"] if not entry["ok"] else "ok")
        except BudgetExceededError as exc:
            chk.check(f"{name} q={q} point-count total",
                      f"budget exceeded (formula {exc.formula_count})",
                      exc.formula_count)


def cmd_verify(args, em) -> int:
    s = _surface(args)
    ns = [args.n] if args.n is not None else [1, 2, 3]
    qs = [args.q] if args.q is not None else [2, 3]
    primes = [int(p) for p in args.modp_primes.split(",") if p]
    budget = args.budget or None
    chk = Checker(em)
    _emit_surface(em, s)
    for n in ns:
        _verify_one(s, n, qs, primes, chk, budget)
    verdict = "PASS" if chk.failures == 0 else "FAIL"
    em.emit({"record": "summary", "checks": chk.count,
             "failures": chk.failures, "verdict": verdict},
            f"verify {verdict} ({chk.count - chk.failures}/{chk.count} checks)")
    return 0 if chk.failures == 0 else CHECK_FAILED


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowupchow",
        description="Presented Chow rings of iterated blowup moduli spaces: "
                    "normal forms, Betti numbers, intersection degrees, and "
                    "finite-field point-count cross checks.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", default="p2",
                        help="p2 | p1xp1 | fa:<a> | file:<path>, optionally "
                             "+blowups:<m> (default: p2)")
    common.add_argument("--format", choices=("text", "json-lines"),
                        default="text", help="output format")
    common.add_argument("--budget", type=int, default=0,
                        help="resource budget: max enumerated tuples / matrix "
                             "cells (0 = default; env BLOWUPCHOW_BUDGET)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present", parents=[common],
                       help="dump generators and relations")
    p.add_argument("-n", type=int, required=True, help="number of blowups")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("betti", parents=[common], help="graded ranks")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--method", default="product",
                   choices=_BETTI_METHODS + ("all",))
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("degree", parents=[common],
                       help="degree of a top-codimension class")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--monomial", required=True,
                   help="expression in canonical syntax, degree 2n")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("count", parents=[common],
                       help="brute-force point count over F_q")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-q", type=int, required=True, help="prime power >= 2")
    p.add_argument("--divisor", action="append", type=_parse_divisor,
                   default=[], metavar="i,j",
                   help="restrict to a divisor (repeatable; mode: all listed)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common],
                       help="run the cross-verification suite")
    p.add_argument("-n", type=int, default=None,
                   help="single n (default grid: 1,2,3)")
    p.add_argument("-q", type=int, default=None,
                   help="single q (default grid: 2,3)")
    p.add_argument("--modp-primes", default="2,3,5,7,101",
                   help="comma-separated primes for the mod-p Hilbert check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    em = Emitter(args.format, sys.stdout)
    try:
        if getattr(args, "n", None) is not None and args.n < 0:
            raise ParseError("n must be >= 0")
        if getattr(args, "q", None) is not None and not _is_prime_power(args.q):
            raise ParseError(f"q must be a prime power >= 2, got {args.q}")
        if getattr(args, "budget", 0) and args.budget <= 0:
            raise ParseError("budget must be positive")
        for (i, j) in getattr(args, "divisor", []):
            if not (1 <= i < j <= args.n):
                raise ParseError(f"divisor pair {i},{j} needs 1 <= i < j <= n")
        return args.func(args, em)
    except (ParseError, SurfaceError, InhomogeneousError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except PresentationError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return CHECK_FAILED
    except BlowupChowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
