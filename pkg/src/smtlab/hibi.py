"""Distributive-lattice algebra: binomial rewriting, multichain counts,
and the flat-degeneration hypothesis checker.

The algebra attached to a finite distributive lattice L is the
polynomial ring on L modulo the binomials xy - (x^y)(xvy) for
non-comparable x, y.  Its degree-k piece has the k-multichains of L as
a basis, so Hilbert values reduce to counting weakly decreasing
k-tuples.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .errors import InvariantViolation, ParameterError
from .generators import format_element, is_standard, parse_element
from .poset import (
    Space,
    element_leq,
    lattice_elements,
    lattice_join,
    lattice_meet,
    chain_length_extremes,
    rank_formula,
)
from .straighten import GRADED, RelationContext, relation_violations, straighten_pair

DEFAULT_DISTRIBUTIVITY_CAP = 64
_SAMPLE_TRIPLES = 20_000


@dataclass
class FiniteLattice:
    """A finite lattice with explicit join/meet tables.

    Construction computes least upper and greatest lower bounds from
    the order and raises ParameterError when some pair has none (or no
    unique one).  Distributivity of both laws is checked on all triples
    up to ``cap`` elements and on a seeded sample beyond that.
    """

    elements: list
    leq: list = field(repr=False)       # boolean matrix
    join: list = field(repr=False)      # index matrix
    meet: list = field(repr=False)      # index matrix

    @classmethod
    def from_leq(cls, elements, leq_fn, cap=DEFAULT_DISTRIBUTIVITY_CAP,
                 seed=1729):
        elements = list(elements)
        n = len(elements)
        if n == 0:
            raise ParameterError("lattice must be non-empty")
        leq = [[bool(leq_fn(elements[i], elements[j])) for j in range(n)]
               for i in range(n)]
        join = [[None] * n for _ in range(n)]
        meet = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                ub = [k for k in range(n) if leq[i][k] and leq[j][k]]
                least = [k for k in ub if all(leq[k][x] for x in ub)]
                lb = [k for k in range(n) if leq[k][i] and leq[k][j]]
                greatest = [k for k in lb if all(leq[x][k] for x in lb)]
                if len(least) != 1 or len(greatest) != 1:
                    raise ParameterError(
                        "not a lattice: pair (%r, %r) lacks a unique "
                        "join/meet" % (elements[i], elements[j]))
                join[i][j] = join[j][i] = least[0]
                meet[i][j] = meet[j][i] = greatest[0]
        lat = cls(elements, leq, join, meet)
        lat._check_distributive(cap, seed)
        return lat

    def _check_distributive(self, cap, seed):
        n = len(self.elements)
        if n <= cap:
            triples = ((x, y, z) for x in range(n) for y in range(n)
                       for z in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(_SAMPLE_TRIPLES))
        J, M = self.join, self.meet
        for x, y, z in triples:
            if M[x][J[y][z]] != J[M[x][y]][M[x][z]]:
                raise ParameterError(
                    "lattice is not distributive (meet over join fails at "
                    "%r, %r, %r)" % tuple(self.elements[t] for t in (x, y, z)))
            if J[x][M[y][z]] != M[J[x][y]][J[x][z]]:
                raise ParameterError(
                    "lattice is not distributive (join over meet fails at "
                    "%r, %r, %r)" % tuple(self.elements[t] for t in (x, y, z)))

    @classmethod
    def chain_product(cls, dims, cap=DEFAULT_DISTRIBUTIVITY_CAP):
        """The product of chains C(dims[0]) x ... x C(dims[-1])."""
        if not dims or any(d < 1 for d in dims):
            raise ParameterError("chain dims must be positive")
        elems = [()]
        for d in dims:
            elems = [e + (v,) for e in elems for v in range(1, d + 1)]
        return cls.from_leq(
            elems, lambda a, b: all(x <= y for x, y in zip(a, b)), cap=cap)

    @classmethod
    def bounded_generator_lattice(cls, space, cap=DEFAULT_DISTRIBUTIVITY_CAP):
        """The generator poset with TOP/BOT, as a concrete lattice."""
        return cls.from_leq(lattice_elements(space), element_leq, cap=cap)

    # -- basic queries ----------------------------------------------------

    def index(self, x):
        return self.elements.index(x)

    def comparable(self, i, j):
        return self.leq[i][j] or self.leq[j][i]

    def noncomparable_pairs(self):
        n = len(self.elements)
        return [(i, j) for i in range(n) for j in range(i + 1, n)
                if not self.comparable(i, j)]

    # -- Hibi machinery ---------------------------------------------------

    def binomial_generators(self):
        """One rewrite rule per unordered non-comparable pair:
        (x, y) -> (meet, join)."""
        return [LatticeBinomial(self.elements[i], self.elements[j],
                                self.elements[self.meet[i][j]],
                                self.elements[self.join[i][j]])
                for i, j in self.noncomparable_pairs()]

    def normal_form(self, factors, strategy="first", rng=None,
                    step_cap=100_000):
        """Rewrite a multiset of lattice elements to a multichain.

        Repeatedly replaces a non-comparable factor pair by its meet and
        join; the result is sorted descending and independent of the
        rewrite order.
        """
        idxs = sorted((self.index(x) for x in factors), key=self._sort_key)
        steps = 0
        while True:
            pairs = [(a, b)
                     for a in range(len(idxs))
                     for b in range(a + 1, len(idxs))
                     if not self.comparable(idxs[a], idxs[b])]
            if not pairs:
                break
            steps += 1
            if steps > step_cap:
                raise InvariantViolation("lattice rewriting did not terminate")
            if strategy == "first":
                a, b = pairs[0]
            elif strategy == "last":
                a, b = pairs[-1]
            elif strategy == "random":
                if rng is None:
                    raise ParameterError("random strategy needs an rng")
                a, b = pairs[rng.randrange(len(pairs))]
            else:
                raise ParameterError("unknown strategy %r" % (strategy,))
            i, j = idxs[a], idxs[b]
            rest = [idxs[t] for t in range(len(idxs)) if t not in (a, b)]
            idxs = sorted(rest + [self.meet[i][j], self.join[i][j]],
                          key=self._sort_key)
        return [self.elements[i] for i in idxs]

    def _sort_key(self, i):
        # descending: more elements below first, index as tiebreak
        return (-sum(self.leq[j][i] for j in range(len(self.elements))), i)

    def hilbert_function(self, k):
        """Number of weakly decreasing k-tuples (k-multichains)."""
        if k < 0:
            raise ParameterError("k must be non-negative")
        n = len(self.elements)
        counts = [1] * n
        for _ in range(k - 1):
            counts = [sum(counts[j] for j in range(n) if self.leq[j][i])
                      for i in range(n)]
        return sum(counts) if k > 0 else 1

    # -- import / export --------------------------------------------------

    def covers(self):
        n = len(self.elements)
        out = []
        for i in range(n):
            below = [j for j in range(n) if j != i and self.leq[j][i]]
            for j in below:
                if not any(k != j and self.leq[j][k] for k in below):
                    out.append((j, i))
        return out

    def to_json(self, labels=None):
        if labels is None:
            labels = [x if isinstance(x, str) else repr(x)
                      for x in self.elements]
        return {
            "schema": 1,
            "elements": list(labels),
            "covers": [list(c) for c in self.covers()],
        }

    @classmethod
    def from_json(cls, data, cap=DEFAULT_DISTRIBUTIVITY_CAP):
        labels = list(data["elements"])
        n = len(labels)
        if len(set(labels)) != n:
            raise ParameterError("lattice element labels must be unique")
        pos = {lab: i for i, lab in enumerate(labels)}
        reach = [[i == j for j in range(n)] for i in range(n)]
        for lo, hi in data["covers"]:
            reach[lo][hi] = True
        for k in range(n):
            for i in range(n):
                if reach[i][k]:
                    row_k = reach[k]
                    row_i = reach[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        return cls.from_leq(labels, lambda a, b: reach[pos[a]][pos[b]],
                            cap=cap)


@dataclass(frozen=True)
class LatticeBinomial:
    """xy - (x^y)(xvy) for one non-comparable pair."""

    x: object
    y: object
    low: object   # meet
    high: object  # join


# ---------------------------------------------------------------------------
# degeneration hypotheses


def check_degeneration_hypotheses(ctx):
    """For every non-comparable pair of the bounded lattice, fetch the
    graded straightening relation and verify:

      (a) coefficient exactly 1 on the join*meet term,
      (b) every right-hand pair strictly brackets the left-hand pair,
      (c) content equality term by term,

    plus the polynomial identity itself.  Returns a report dict whose
    ``violations`` list is empty exactly when the degeneration
    hypotheses hold.
    """
    space = ctx.space
    elements = lattice_elements(space)
    violations = []
    pairs = 0
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            pair = (x, y)
            if is_standard(space, pair):
                continue
            pairs += 1
            rel = straighten_pair(ctx, x, y, mode=GRADED)
            for problem in relation_violations(ctx, rel):
                violations.append({
                    "pair": [format_element(x), format_element(y)],
                    "problem": problem,
                })
    return {
        "space": {"n": space.n, "m": space.m, "q": space.q},
        "pairs_checked": pairs,
        "violations": violations,
        "passed": not violations,
    }


def rank_dimension_report(space):
    """Maximal-chain cardinalities of the generator poset and its bounded
    lattice against the closed-form ranks; the bounded value plus one
    witnesses the Krull dimension of the lattice algebra."""
    from .generators import generator_elements

    rows = []
    for poset, elems in (("H", generator_elements(space)),
                         ("D", lattice_elements(space))):
        lo, hi = chain_length_extremes(elems, element_leq)
        expected = rank_formula(space, poset) + 1
        rows.append({
            "poset": poset,
            "chain_cardinality_min": lo,
            "chain_cardinality_max": hi,
            "expected_cardinality": expected,
            "passed": lo == hi == expected,
        })
    return {
        "space": {"n": space.n, "m": space.m, "q": space.q},
        "posets": rows,
        "lattice_algebra_dimension": rows[1]["chain_cardinality_max"],
        "passed": all(r["passed"] for r in rows),
    }


def save_lattice(lattice, path, labels=None):
    with open(path, "w") as fh:
        json.dump(lattice.to_json(labels), fh, indent=1)
        fh.write("\n")


def load_lattice(path, cap=DEFAULT_DISTRIBUTIVITY_CAP):
    with open(path) as fh:
        return FiniteLattice.from_json(json.load(fh), cap=cap)
