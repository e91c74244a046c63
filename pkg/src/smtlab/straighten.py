"""Straightening: expand non-standard products in the standard basis.

The coefficients of a straightening relation are not listed anywhere in
closed form; they are pinned down by exact linear algebra.  For a
non-standard pair x, y we enumerate the standard monomials with the
same content as x*y, evaluate everything as polynomials, and solve.
Linear independence of the standard monomials makes the solution
unique, and every computed relation is re-checked structurally:

  (a) the join*meet term occurs with coefficient exactly 1;
  (b) every right-hand pair (alpha, beta) brackets x and y strictly,
      beta < x, y < alpha;
  (c) content is preserved term by term.

Rewriting an arbitrary monomial repeats pair replacement until all
factors are pairwise comparable.  Termination is witnessed by a weight:
each factor contributes its embedding digits in a base larger than
max(m, q), and in graded mode every rewrite step strictly increases
the resulting integer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from ._linalg import RowReducer, solve_unique
from .errors import (
    BasisFailureError,
    InvariantViolation,
    ParameterError,
    TerminationFailureError,
)
from .generators import (
    canonical_monomial,
    content,
    eval_monomial,
    format_element,
    format_monomial,
    is_standard,
    monomial_bidegree,
    parse_monomial,
    standard_monomials,
    violating_pairs,
)
from .polyring import PolyRing
from .poset import (
    BOT,
    TOP,
    Space,
    element_lt,
    embed_chain,
    lattice_join,
    lattice_meet,
    parse_element,
    sort_key,
)

PLAIN = "plain"
GRADED = "graded"
MODES = (PLAIN, GRADED)

DEFAULT_STEP_CAP = 100_000


@dataclass(frozen=True)
class Weight:
    """Base-N digit concatenation of a monomial's embedding tuples."""

    value: int
    base: int
    digits: tuple


@dataclass(frozen=True)
class Relation:
    """lhs pair expanded over standard monomials with exact coefficients."""

    lhs: tuple          # (x, y), canonical order
    rhs: tuple          # ((Fraction, monomial tuple), ...)
    mode: str = PLAIN


def factor_digits(space, e):
    """Digit block contributed by one factor: both embedding halves for
    p-like factors (TOP and BOT included), the row half for u, the
    column half for xi."""
    vec = embed_chain(space, e)
    n = space.n
    if e.kind == "u":
        return vec[: n + 1]
    if e.kind == "xi":
        return vec[n + 1:]
    return vec


def monomial_weight(space, factors, base=None):
    """Weight of a monomial: factors in canonical order, digit blocks
    concatenated most-significant first.  Every digit is >= 1, so a
    longer digit string always means a strictly larger value."""
    top = max(space.m, space.q)
    if base is None:
        base = top + 1
    if base <= top:
        raise ParameterError(
            "weight base must exceed max(m, q) = %d, got %d" % (top, base))
    digits = ()
    for e in canonical_monomial(space, factors):
        digits = digits + factor_digits(space, e)
    value = 0
    for d in digits:
        value = value * base + d
    return Weight(value, base, digits)


class RelationContext:
    """Shared per-space state: the polynomial ring, evaluation caches,
    candidate pools per bidegree, and the memoized relations.

    Build single-threaded; once filled, reads are safe to share.
    """

    def __init__(self, space):
        if not isinstance(space, Space):
            space = Space(*space)
        self.space = space
        self.ring = PolyRing(space)
        self.eval_cache = {}
        self._pools = {}
        self._relations = {}

    def eval_monomial(self, factors):
        return eval_monomial(self.ring, factors, self.eval_cache)

    def space_elements(self):
        from .generators import generator_elements
        return generator_elements(self.space)

    def candidates(self, bidegree, cont):
        """Standard monomials of the given bidegree and content."""
        pool = self._pools.get(bidegree)
        if pool is None:
            pool = {}
            for mono in standard_monomials(self.space, *bidegree):
                pool.setdefault(content(mono), []).append(mono)
            self._pools[bidegree] = pool
        return pool.get(cont, [])


def relation_to_graded(rel, space):
    """Pad deficient terms with the homogenizing symbols: the u*xi
    family gains BOT next to its single minor, and empty-minor terms of
    the p*p family gain TOP."""
    if rel.mode == GRADED:
        return rel
    x, y = rel.lhs
    kinds = {x.kind, y.kind}
    rhs = []
    for c, mono in rel.rhs:
        if len(mono) == 2:
            rhs.append((c, mono))
        elif len(mono) == 1:
            pad = BOT if kinds == {"u", "xi"} else TOP
            rhs.append((c, canonical_monomial(space, mono + (pad,))))
        else:
            raise InvariantViolation(
                "unexpected %d-factor term in a quadratic relation" % len(mono))
    return Relation(rel.lhs, tuple(rhs), GRADED)


def relation_to_plain(rel, space):
    if rel.mode == PLAIN:
        return rel
    rhs = []
    for c, mono in rel.rhs:
        stripped = tuple(e for e in mono if e.kind not in ("top", "bot"))
        rhs.append((c, stripped))
    return Relation(rel.lhs, tuple(rhs), PLAIN)


def _term_sort_key(space, mono):
    # descending weight of the term's larger factor, then of the rest
    return tuple(sort_key(space, e) for e in canonical_monomial(space, mono))


def straighten_pair(ctx, x, y, mode=PLAIN):
    """The unique standard expansion of the product of a non-standard
    pair; memoized.  Raises BasisFailureError if the linear solve is
    not consistent and unique (which would signal a bug)."""
    if mode not in MODES:
        raise ParameterError("mode must be one of %r" % (MODES,))
    space = ctx.space
    pair = canonical_monomial(space, (x, y))
    if is_standard(space, pair):
        raise ParameterError(
            "pair %s is standard; nothing to straighten" % format_monomial(pair))
    cached = ctx._relations.get(pair)
    if cached is None:
        target = ctx.eval_monomial(pair)
        cands = ctx.candidates(monomial_bidegree(space, pair), content(pair))
        columns = [ctx.eval_monomial(m).terms for m in cands]
        coeffs = solve_unique(columns, target.terms)
        rhs = [(c, m) for c, m in zip(coeffs, cands) if c != 0]
        rhs.sort(key=lambda t: _term_sort_key(space, t[1]))
        cached = Relation(pair, tuple(rhs), PLAIN)
        problems = relation_violations(ctx, cached)
        if problems:
            raise InvariantViolation(
                "relation for %s violates structural guarantees: %s"
                % (format_monomial(pair), "; ".join(problems)))
        ctx._relations[pair] = cached
    return relation_to_graded(cached, space) if mode == GRADED else cached


def relation_violations(ctx, rel):
    """Structural checks on a relation; returns human-readable problems.

    Verifies the polynomial identity, coefficient 1 on the join*meet
    term, the strict interval condition on every right-hand pair, and
    content preservation.  Accepts hand-built relations so corrupted
    fixtures can be exercised.
    """
    space = ctx.space
    problems = []
    x, y = rel.lhs
    graded = relation_to_graded(rel, space)

    lhs_poly = ctx.eval_monomial(rel.lhs)
    rhs_poly = ctx.ring.zero()
    for c, mono in rel.rhs:
        rhs_poly = rhs_poly + ctx.eval_monomial(mono).scale(c)
    if lhs_poly != rhs_poly:
        problems.append("sides evaluate to different polynomials")

    jm = canonical_monomial(
        space, (lattice_join(space, x, y), lattice_meet(space, x, y)))
    jm_coeff = None
    for c, mono in graded.rhs:
        if mono == jm:
            jm_coeff = c
            break
    if jm_coeff != 1:
        problems.append(
            "join*meet term %s has coefficient %s, expected 1"
            % (format_monomial(jm), jm_coeff))

    lhs_content = content(rel.lhs)
    for c, mono in graded.rhs:
        if len(mono) != 2:
            problems.append("term %s is not quadratic" % format_monomial(mono))
            continue
        alpha, beta = mono
        for z in (x, y):
            if not (element_lt(beta, z) and element_lt(z, alpha)):
                problems.append(
                    "term %s does not bracket %s"
                    % (format_monomial(mono), format_element(z)))
        if content(mono) != lhs_content:
            problems.append("term %s changes content" % format_monomial(mono))
    return problems


# ---------------------------------------------------------------------------
# full rewriting


def _select_pair(pairs, strategy, rng):
    if strategy == "first":
        return pairs[0]
    if strategy == "last":
        return pairs[-1]
    if strategy == "random":
        if rng is None:
            raise ParameterError("random strategy needs an rng")
        return pairs[rng.randrange(len(pairs))]
    raise ParameterError("unknown strategy %r" % (strategy,))


def straighten(ctx, factors, mode=PLAIN, strategy="first", rng=None,
               step_cap=DEFAULT_STEP_CAP, trace=None):
    """Rewrite a monomial to a combination of standard monomials.

    Returns a list of (coefficient, monomial) pairs in canonical order.
    ``trace``, when a list, receives one (old_weight, new_weight) entry
    per replacement monomial so weight growth can be asserted.
    """
    if mode not in MODES:
        raise ParameterError("mode must be one of %r" % (MODES,))
    space = ctx.space
    factors = canonical_monomial(space, factors)
    if mode == PLAIN and any(e.kind in ("top", "bot") for e in factors):
        raise ParameterError("plain-mode monomials cannot contain TOP/BOT")
    work = {factors: Fraction(1)}
    steps = 0
    while True:
        pending = None
        for mono in sorted(work, key=lambda m: _term_sort_key(space, m)):
            pairs = violating_pairs(space, mono)
            if pairs:
                pending = (mono, pairs)
                break
        if pending is None:
            break
        steps += 1
        if steps > step_cap:
            raise TerminationFailureError(
                "rewriting exceeded %d steps" % step_cap)
        mono, pairs = pending
        coeff = work.pop(mono)
        i, j = _select_pair(pairs, strategy, rng)
        rest = tuple(e for k, e in enumerate(mono) if k not in (i, j))
        rel = straighten_pair(ctx, mono[i], mono[j], mode=mode)
        old_w = monomial_weight(space, mono).value if trace is not None else None
        for c, term in rel.rhs:
            new_mono = canonical_monomial(space, rest + term)
            if trace is not None:
                trace.append((old_w, monomial_weight(space, new_mono).value))
            v = work.get(new_mono, Fraction(0)) + coeff * c
            if v:
                work[new_mono] = v
            else:
                work.pop(new_mono, None)
    out = [(c, m) for m, c in work.items()]
    out.sort(key=lambda t: _term_sort_key(space, t[1]))
    return out


# ---------------------------------------------------------------------------
# presentation check


def _monomials_by_bidegree(space, gens, count):
    groups = {}
    for mono in combinations_with_replacement(gens, count):
        groups.setdefault(monomial_bidegree(space, mono), []).append(
            canonical_monomial(space, mono))
    return groups


def presentation_check(ctx, degree_cap, p_only=False):
    """Compare, degree by degree, the kernel of evaluation on free
    monomials in the generators against the span of the quadratic
    straightening relations times lower-degree monomials.

    "Degree" counts factors; both sides are filtered at <= degree and
    stratified by bidegree, which both respect.  Returns a report dict.
    """
    space = ctx.space
    gens = [e for e in canonical_monomial(space, ctx.space_elements())
            if not p_only or e.kind == "p"]

    relations = []
    for i, x in enumerate(gens):
        for y in gens[i:]:
            pair = canonical_monomial(space, (x, y))
            if not is_standard(space, pair):
                relations.append(straighten_pair(ctx, x, y, mode=PLAIN))

    degrees = []
    for d in range(1, degree_cap + 1):
        # all free monomials with <= d factors, grouped by bidegree
        groups = {}
        for count in range(0, d + 1):
            for bid, monos in _monomials_by_bidegree(space, gens, count).items():
                groups.setdefault(bid, []).extend(monos)

        kernel = 0
        total = 0
        for bid in sorted(groups):
            monos = groups[bid]
            total += len(monos)
            red = RowReducer()
            for mono in monos:
                red.insert(ctx.eval_monomial(mono).terms)
            kernel += len(monos) - red.rank

        span = 0
        if d >= 2:
            index = {}
            for bid in sorted(groups):
                index[bid] = {m: i for i, m in enumerate(
                    sorted(groups[bid], key=lambda m: _term_sort_key(space, m)))}
            by_bid = {}
            for rel in relations:
                rel_vec = {rel.lhs: Fraction(1)}
                for c, mono in rel.rhs:
                    rel_vec[mono] = rel_vec.get(mono, Fraction(0)) - c
                rel_bid = monomial_bidegree(space, rel.lhs)
                for count in range(0, d - 1):
                    for mult in combinations_with_replacement(gens, count):
                        mb = monomial_bidegree(space, mult)
                        bid = (rel_bid[0] + mb[0], rel_bid[1] + mb[1])
                        vec = {}
                        for mono, c in rel_vec.items():
                            key = index[bid][canonical_monomial(space, mono + tuple(mult))]
                            vec[key] = vec.get(key, Fraction(0)) + c
                        by_bid.setdefault(bid, []).append(vec)
            for bid in sorted(by_bid):
                red = RowReducer()
                for vec in by_bid[bid]:
                    red.insert(vec)
                span += red.rank
        degrees.append({
            "degree": d,
            "monomials": total,
            "kernel_dim": kernel,
            "relation_span_dim": span,
            "passed": kernel == span if d >= 2 else kernel == 0,
        })
    return {
        "p_only": p_only,
        "relations": len(relations),
        "degrees": degrees,
        "passed": all(row["passed"] for row in degrees),
    }


# ---------------------------------------------------------------------------
# relation files


def relations_corpus(ctx, mode=GRADED):
    """Straightening relations for every non-standard pair over the
    bounded lattice, in a deterministic order."""
    space = ctx.space
    elements = canonical_monomial(space, ctx.space_elements())
    out = []
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            if not is_standard(space, (x, y)):
                out.append(straighten_pair(ctx, x, y, mode=mode))
    return out


def relation_to_dict(rel):
    return {
        "lhs": [format_element(e) for e in rel.lhs],
        "rhs": [{"c": str(c), "m": [format_element(e) for e in mono]}
                for c, mono in rel.rhs],
        "mode": rel.mode,
    }


def relation_from_dict(data, space):
    lhs = tuple(parse_element(t, space) for t in data["lhs"])
    rhs = tuple((Fraction(term["c"]),
                 tuple(parse_element(t, space) for t in term["m"]))
                for term in data["rhs"])
    return Relation(lhs, rhs, data.get("mode", PLAIN))


def dump_relations(ctx, path, mode=GRADED):
    payload = {
        "schema": 1,
        "space": {"n": ctx.space.n, "m": ctx.space.m, "q": ctx.space.q},
        "mode": mode,
        "relations": [relation_to_dict(r) for r in relations_corpus(ctx, mode)],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=False)
        fh.write("\n")
    return payload


def load_relations(path):
    with open(path) as fh:
        payload = json.load(fh)
    sp = payload["space"]
    space = Space(sp["n"], sp["m"], sp["q"])
    rels = [relation_from_dict(d, space) for d in payload["relations"]]
    return space, payload["mode"], rels
