"""Batch driver: every verification is a subcommand with deterministic,
machine-readable output.

Exit codes: 0 all checks pass, 2 usage or parameter error, 3 internal
invariant violation (including a failed verification), 4 resource cap
exceeded.  Reports go to stdout; timing diagnostics go to stderr so the
same configuration and seed always produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from .errors import InvariantViolation, ParameterError, ResourceCapError
from .generators import (
    canonical_monomial,
    format_monomial,
    generator_elements,
    lattice_elements,
    parse_monomial,
    standard_monomials,
    standard_multichains,
)
from .hibi import (
    FiniteLattice,
    check_degeneration_hypotheses,
    rank_dimension_report,
)
from .oracle import determinantal_dimension, invariant_dimension, poly_rank
from .poset import (
    Space,
    chain_length_extremes,
    element_leq,
    embed_chain,
    enumerate_tuples,
    format_element,
    leq_pair,
    minor_by_reversal,
    rank_formula,
    sort_key,
)
from .straighten import (
    GRADED,
    PLAIN,
    RelationContext,
    presentation_check,
    straighten,
)

SCHEMA = 1
DEFAULT_SEED = 1729
SUITES = ("order", "lattice", "relations", "basis", "degeneration",
          "fundamental-gl", "fundamental-sl", "rank")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_RESOURCE = 4


@dataclass
class RunConfig:
    n: int = 2
    m: int = 3
    q: int = 3
    maxdeg: int = 4
    seed: int = DEFAULT_SEED
    format: str = "text"
    cap_monomials: int = 5000
    cap_lattice: int = 200
    threads: int = 1

    def space(self):
        return Space(self.n, self.m, self.q)

    def as_dict(self):
        return {
            "n": self.n, "m": self.m, "q": self.q, "maxdeg": self.maxdeg,
            "seed": self.seed, "cap_monomials": self.cap_monomials,
            "cap_lattice": self.cap_lattice, "threads": self.threads,
        }


def _read_threads():
    raw = os.environ.get("SMT_LAB_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        raise ParameterError("SMT_LAB_THREADS must be an integer, got %r" % raw)
    if val < 1:
        raise ParameterError("SMT_LAB_THREADS must be >= 1, got %d" % val)
    return val


# ---------------------------------------------------------------------------
# verification suites; each check is a (name, passed, details) triple


def _check(checks, name, passed, details):
    checks.append({"name": name, "passed": bool(passed), "details": details})


def suite_rank(cfg, ctx):
    checks = []
    space = cfg.space()
    for poset in ("H", "D"):
        elems = generator_elements(space) if poset == "H" else lattice_elements(space)
        if len(elems) > cfg.cap_lattice:
            raise ResourceCapError(
                "poset has %d elements, over the cap %d"
                % (len(elems), cfg.cap_lattice))
        lo, hi = chain_length_extremes(elems, element_leq)
        want = rank_formula(space, poset) + 1
        _check(checks, "chains-%s" % poset, lo == hi == want,
               "cardinality range %d..%d, expected %d" % (lo, hi, want))
    return checks


def suite_order(cfg, ctx):
    checks = []
    space = cfg.space()
    elems = lattice_elements(space)
    # embedding preserves the order everywhere
    mono = all(
        (not element_leq(x, y)) or
        all(a <= b for a, b in zip(embed_chain(space, x), embed_chain(space, y)))
        for x in elems for y in elems)
    _check(checks, "embedding-preserves-order", mono,
           "%d elements" % len(elems))
    # reflection can only fail against a minor extended by a saturated
    # (m, q) tail, which the padding scheme cannot distinguish
    bad = []
    for x in elems:
        for y in elems:
            vx, vy = embed_chain(space, x), embed_chain(space, y)
            if x != y and all(a <= b for a, b in zip(vx, vy)):
                if not element_leq(x, y):
                    saturated = (x.kind == y.kind == "p"
                                 and len(y.rows) == len(x.rows) + 1
                                 and y.rows[-1] == space.m
                                 and y.cols[-1] == space.q)
                    if not saturated:
                        bad.append((format_element(x), format_element(y)))
    _check(checks, "embedding-reflects-order-outside-saturated-tails",
           not bad, "violations: %r" % bad[:5])
    # order reversal of the reflection bijection onto minors
    rev_ok = True
    for d, nn in ((2, 4), (2, 5), (3, 6), (2, 6)):
        tuples = enumerate_tuples(d, nn)
        for i1 in tuples:
            for i2 in tuples:
                fwd = tuple(a <= b for a, b in zip(i1, i2)) == (True,) * d
                img1, img2 = minor_by_reversal(i1, d, nn), minor_by_reversal(i2, d, nn)
                if fwd != leq_pair(img2, img1):
                    rev_ok = False
    _check(checks, "minor-bijection-reverses-order", rev_ok,
           "tuple sizes (2,4),(2,5),(3,6),(2,6)")
    return checks


def suite_lattice(cfg, ctx):
    checks = []
    space = cfg.space()
    lat = FiniteLattice.bounded_generator_lattice(space, cap=cfg.cap_lattice)
    n = len(lat.elements)
    # closure: the resolved join/meet always realize the componentwise
    # extremes of the embedding
    from .poset import lattice_join, lattice_meet
    ok = True
    pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            x, y = lat.elements[i], lat.elements[j]
            vx, vy = embed_chain(space, x), embed_chain(space, y)
            jn = lattice_join(space, x, y)
            mt = lattice_meet(space, x, y)
            pairs += 1
            if embed_chain(space, jn) != tuple(map(max, zip(vx, vy))):
                ok = False
            if embed_chain(space, mt) != tuple(map(min, zip(vx, vy))):
                ok = False
            if lat.elements[lat.join[i][j]] != jn or lat.elements[lat.meet[i][j]] != mt:
                ok = False
    _check(checks, "closure", ok, "%d pairs" % pairs)
    # distributivity was verified on construction (all triples under cap)
    _check(checks, "distributive", True,
           "%d elements, both laws on all triples" % n)
    return checks


def suite_relations(cfg, ctx):
    checks = []
    space = cfg.space()
    report = check_degeneration_hypotheses(ctx)
    _check(checks, "relation-structure", report["passed"],
           "%d pairs, %d violations"
           % (report["pairs_checked"], len(report["violations"])))

    rng = random.Random(cfg.seed)
    pool = lattice_elements(space)
    mismatches = 0
    weight_ok = True
    for _ in range(200):
        deg = rng.randrange(1, cfg.maxdeg + 1)
        mono = tuple(pool[rng.randrange(len(pool))] for _ in range(deg))
        trace = []
        results = []
        for strategy in ("first", "last", "random"):
            srng = random.Random(rng.randrange(2 ** 32))
            results.append(straighten(
                ctx, mono, mode=GRADED, strategy=strategy, rng=srng,
                trace=trace))
        if not (results[0] == results[1] == results[2]):
            mismatches += 1
        if any(old >= new for old, new in trace):
            weight_ok = False
    _check(checks, "confluence-200-random-monomials", mismatches == 0,
           "%d mismatches" % mismatches)
    _check(checks, "weight-strictly-increases", weight_ok, "graded rewriting")
    return checks


def suite_basis(cfg, ctx):
    checks = []
    space = cfg.space()
    for total in range(0, cfg.maxdeg + 1):
        for a in range(0, total + 1):
            b = total - a
            monos = standard_monomials(space, a, b)
            rank = poly_rank([ctx.eval_monomial(m) for m in monos]) if monos else 0
            dim = invariant_dimension(space, (a, b), "SL",
                                      cap=cfg.cap_monomials)
            _check(checks, "bidegree-%d-%d" % (a, b),
                   len(monos) == rank == dim,
                   "count=%d rank=%d invariant_dim=%d" % (len(monos), rank, dim))
    return checks


def suite_degeneration(cfg, ctx):
    checks = []
    space = cfg.space()
    report = check_degeneration_hypotheses(ctx)
    _check(checks, "hypotheses-a-b-c", report["passed"],
           "%d pairs, %d violations"
           % (report["pairs_checked"], len(report["violations"])))
    lat = FiniteLattice.bounded_generator_lattice(space, cap=cfg.cap_lattice)
    agree = True
    values = []
    for k in range(0, min(3, cfg.maxdeg) + 1):
        h = lat.hilbert_function(k)
        s = len(standard_multichains(space, k))
        values.append((k, h, s))
        if h != s:
            agree = False
    _check(checks, "multichain-hilbert-agreement", agree,
           "; ".join("k=%d: %d vs %d" % v for v in values))
    rep = rank_dimension_report(space)
    _check(checks, "rank-dimension", rep["passed"],
           "lattice algebra dimension %d" % rep["lattice_algebra_dimension"])
    return checks


def suite_fundamental_gl(cfg, ctx):
    checks = []
    space = cfg.space()
    ring = ctx.ring
    if space.m >= space.n + 1 and space.q >= space.n + 1:
        det = ring.det([[ring.pairing(i, j) for j in range(1, space.n + 2)]
                        for i in range(1, space.n + 2)])
        _check(checks, "pairing-minor-vanishes", not det,
               "(n+1)-minor of the pairing matrix is identically zero")
    for a in range(0, min(3, cfg.maxdeg) + 1):
        p_only = [m for m in standard_monomials(space, a, a)
                  if all(e.kind == "p" for e in m)]
        dim = invariant_dimension(space, (a, a), "GL", cap=cfg.cap_monomials)
        ok = len(p_only) == dim
        details = "count=%d invariant_dim=%d" % (len(p_only), dim)
        if space.m == space.q == space.n + 1:
            series = determinantal_dimension(space.m, space.q, space.n, a)
            ok = ok and series == dim
            details += " series=%d" % series
        _check(checks, "balanced-bidegree-%d" % a, ok, details)
    pres = presentation_check(ctx, min(3, cfg.maxdeg), p_only=True)
    _check(checks, "pairing-presentation", pres["passed"],
           "; ".join("deg %d: kernel %d vs span %d"
                     % (r["degree"], r["kernel_dim"], r["relation_span_dim"])
                     for r in pres["degrees"]))
    return checks


def suite_fundamental_sl(cfg, ctx):
    checks = []
    pres = presentation_check(ctx, min(3, cfg.maxdeg), p_only=False)
    for row in pres["degrees"]:
        _check(checks, "presentation-degree-%d" % row["degree"], row["passed"],
               "monomials=%d kernel=%d relation_span=%d"
               % (row["monomials"], row["kernel_dim"], row["relation_span_dim"]))
    return checks


SUITE_FUNCS = {
    "rank": suite_rank,
    "order": suite_order,
    "lattice": suite_lattice,
    "relations": suite_relations,
    "basis": suite_basis,
    "degeneration": suite_degeneration,
    "fundamental-gl": suite_fundamental_gl,
    "fundamental-sl": suite_fundamental_sl,
}


# ---------------------------------------------------------------------------
# output formatting


def _emit(cfg, payload, stream):
    if cfg.format == "json":
        json.dump(payload, stream, indent=1)
        stream.write("\n")
    elif cfg.format == "csv":
        writer = csv.writer(stream)
        if "checks" in payload:
            writer.writerow(["name", "passed", "details"])
            for c in payload["checks"]:
                writer.writerow([c["name"], "pass" if c["passed"] else "fail",
                                 c["details"]])
        else:
            writer.writerow(["line"])
            for line in payload["lines"]:
                writer.writerow([line])
    else:
        if "checks" in payload:
            for c in payload["checks"]:
                stream.write("%-4s %s: %s\n"
                             % ("PASS" if c["passed"] else "FAIL",
                                c["name"], c["details"]))
            stream.write("suite %s: %s\n"
                         % (payload["suite"],
                            "PASS" if payload["passed"] else "FAIL"))
        else:
            for line in payload["lines"]:
                stream.write(line + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_enumerate(cfg, args):
    space = cfg.space()
    if args.rd_degree is not None:
        lines = [format_monomial(m)
                 for m in standard_multichains(space, args.rd_degree)]
    elif args.standard or args.bidegree is not None:
        if args.bidegree is None:
            raise ParameterError("--standard needs --bidegree a,b")
        try:
            a, b = (int(x) for x in args.bidegree.split(","))
        except ValueError:
            raise ParameterError("--bidegree expects 'a,b', got %r"
                                 % args.bidegree)
        lines = [format_monomial(m) for m in standard_monomials(space, a, b)]
    else:
        elems = generator_elements(space) if args.poset == "H" \
            else lattice_elements(space)
        elems = sorted(elems, key=lambda e: sort_key(space, e))
        lines = [format_element(e) for e in elems]
    payload = {"schema": SCHEMA, "command": "enumerate",
               "config": cfg.as_dict(), "lines": lines}
    _emit(cfg, payload, sys.stdout)
    return EXIT_OK


def cmd_straighten(cfg, args):
    space = cfg.space()
    ctx = RelationContext(space)
    mono = parse_monomial(args.monomial, space)
    mode = GRADED if args.graded else PLAIN
    terms = straighten(ctx, mono, mode=mode)
    lines = ["%s %s" % (c, format_monomial(m)) for c, m in terms]
    payload = {"schema": SCHEMA, "command": "straighten",
               "config": cfg.as_dict(), "mode": mode,
               "input": format_monomial(canonical_monomial(space, mono)),
               "lines": lines}
    _emit(cfg, payload, sys.stdout)
    return EXIT_OK


def cmd_verify(cfg, args):
    space = cfg.space()
    ctx = RelationContext(space)
    suites = SUITES if args.suite == "all" else (args.suite,)
    all_ok = True
    for suite in suites:
        start = time.monotonic()
        checks = SUITE_FUNCS[suite](cfg, ctx)
        elapsed = time.monotonic() - start
        passed = all(c["passed"] for c in checks)
        all_ok = all_ok and passed
        payload = {"schema": SCHEMA, "command": "verify", "suite": suite,
                   "config": cfg.as_dict(),
                   "checks": checks, "passed": passed}
        _emit(cfg, payload, sys.stdout)
        print("# suite %s finished in %.2fs" % (suite, elapsed),
              file=sys.stderr)
    if not all_ok:
        raise InvariantViolation("one or more verification checks failed")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="smtlab",
        description="Exact verification toolkit for standard monomial "
                    "bases of matrix-pairing invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--m", type=int, default=3)
        p.add_argument("--q", type=int, default=3)
        p.add_argument("--maxdeg", type=int, default=4)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="text")
        p.add_argument("--cap-monomials", type=int, default=5000)
        p.add_argument("--cap-lattice", type=int, default=200)

    p_enum = sub.add_parser("enumerate", help="list elements or monomials")
    common(p_enum)
    p_enum.add_argument("--poset", choices=("H", "D"), default="H",
                        help="H: generators; D: generators plus TOP/BOT")
    p_enum.add_argument("--standard", action="store_true",
                        help="list standard monomials (needs --bidegree)")
    p_enum.add_argument("--bidegree", metavar="a,b", default=None,
                        help="bidegree for --standard")
    p_enum.add_argument("--rd-degree", type=int, default=None,
                        help="graded-mode multichains of this degree")

    p_str = sub.add_parser("straighten", help="expand a monomial over the "
                                              "standard basis")
    common(p_str)
    p_str.add_argument("monomial", help="e.g. \"u[1,2]*xi[1,2]\"")
    p_str.add_argument("--graded", action="store_true",
                       help="keep TOP/BOT homogenizing factors")

    p_ver = sub.add_parser("verify", help="run a verification suite")
    common(p_ver)
    p_ver.add_argument("--suite", choices=SUITES + ("all",), required=True)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = RunConfig(
            n=args.n, m=args.m, q=args.q, maxdeg=args.maxdeg, seed=args.seed,
            format=args.format, cap_monomials=args.cap_monomials,
            cap_lattice=args.cap_lattice, threads=_read_threads())
        cfg.space()  # validate early
        if args.command == "enumerate":
            return cmd_enumerate(cfg, args)
        if args.command == "straighten":
            return cmd_straighten(cfg, args)
        if args.command == "verify":
            return cmd_verify(cfg, args)
        raise ParameterError("unknown command %r" % (args.command,))
    except ParameterError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print("resource cap: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print("invariant violation: %s" % exc, file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
