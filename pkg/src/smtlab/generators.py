"""Monomials in the generators: standardness, enumeration, content.

A monomial is a multiset of elements, held as a tuple in canonical
(weakly decreasing) order.  It is standard when no u-factor meets an
xi-factor and the factors are pairwise comparable, i.e. they form a
multichain.  Two modes appear throughout:

* plain mode -- monomials in the generators themselves (no TOP/BOT);
* graded mode -- TOP and BOT may occur as factors, standing for the
  homogenizing symbols of the bounded lattice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .poset import (
    BOT,
    TOP,
    comparable,
    element_leq,
    format_element,
    generator_elements,
    lattice_elements,
    parse_element,
    sort_key,
)

__all__ = [
    "generator_elements", "lattice_elements", "Content", "content",
    "canonical_monomial", "is_standard", "violating_pairs",
    "element_bidegree", "monomial_bidegree", "standard_monomials",
    "standard_multichains", "format_monomial", "parse_monomial",
    "eval_element", "eval_monomial",
]


@dataclass(frozen=True)
class Content:
    """Row indices consumed on the u side and column indices on the xi
    side, as sorted multisets.  Additive over multiplication and
    preserved by every straightening relation.  TOP and BOT consume
    nothing (the empty-minor convention)."""

    u_rows: tuple
    xi_cols: tuple

    def __add__(self, other):
        return Content(tuple(sorted(self.u_rows + other.u_rows)),
                       tuple(sorted(self.xi_cols + other.xi_cols)))


def element_content(e):
    if e.kind == "p":
        return Content(e.rows, e.cols)
    if e.kind == "u":
        return Content(e.rows, ())
    if e.kind == "xi":
        return Content((), e.cols)
    return Content((), ())


def content(factors):
    total = Content((), ())
    for e in factors:
        total = total + element_content(e)
    return total


def canonical_monomial(space, factors):
    """Factors sorted weakly decreasing under the canonical total key."""
    return tuple(sorted(factors, key=lambda e: sort_key(space, e)))


def is_standard(space, factors):
    """No u/xi mixing and all factors pairwise comparable."""
    kinds = {e.kind for e in factors}
    if "u" in kinds and "xi" in kinds:
        return False
    fs = list(factors)
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            if not comparable(fs[i], fs[j]):
                return False
    return True


def violating_pairs(space, factors):
    """Index pairs (i < j, canonical order) of non-comparable factors."""
    fs = canonical_monomial(space, factors)
    return [(i, j)
            for i in range(len(fs))
            for j in range(i + 1, len(fs))
            if not comparable(fs[i], fs[j])]


def element_bidegree(space, e):
    """(u-degree, xi-degree) of the evaluated generator."""
    n = space.n
    if e.kind == "p":
        r = len(e.rows)
        return (r, r)
    if e.kind == "u":
        return (n, 0)
    if e.kind == "xi":
        return (0, n)
    return (0, 0)


def monomial_bidegree(space, factors):
    a = b = 0
    for e in factors:
        da, db = element_bidegree(space, e)
        a += da
        b += db
    return (a, b)


def standard_monomials(space, a, b):
    """All plain-mode standard monomials of evaluated bidegree (a, b).

    Enumeration walks weakly decreasing chains; each multichain has a
    unique such listing, so there are no duplicates.
    """
    if a < 0 or b < 0:
        raise ParameterError("bidegree must be non-negative")
    pool = canonical_monomial(space, generator_elements(space))
    bidegs = [element_bidegree(space, e) for e in pool]
    out = []

    def extend(start, prev, rem_a, rem_b, acc):
        if rem_a == 0 and rem_b == 0:
            out.append(tuple(acc))
            # a smaller factor could still fit only with bidegree (0,0),
            # which no generator has, so stop here
            return
        for idx in range(start, len(pool)):
            e = pool[idx]
            da, db = bidegs[idx]
            if da > rem_a or db > rem_b:
                continue
            if prev is not None and not element_leq(e, prev):
                continue
            acc.append(e)
            extend(idx, e, rem_a - da, rem_b - db, acc)
            acc.pop()

    extend(0, None, a, b, [])
    return out


def standard_multichains(space, k):
    """Graded-mode standard monomials of degree k: all weakly decreasing
    k-tuples over the bounded lattice, TOP and BOT included."""
    if k < 0:
        raise ParameterError("degree must be non-negative")
    pool = canonical_monomial(space, lattice_elements(space))
    out = []

    def extend(start, prev, rem, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(pool)):
            e = pool[idx]
            if prev is not None and not element_leq(e, prev):
                continue
            acc.append(e)
            extend(idx, e, rem - 1, acc)
            acc.pop()

    extend(0, None, k, [])
    return out


def format_monomial(factors):
    if not factors:
        return "1"
    return "*".join(format_element(e) for e in factors)


def parse_monomial(text, space=None):
    text = text.strip()
    if text == "1":
        return ()
    return tuple(parse_element(part, space) for part in text.split("*"))


def eval_element(ring, e):
    """The generator as a polynomial; TOP and BOT evaluate to 1."""
    if e.kind == "p":
        return ring.pairing_minor(e.rows, e.cols)
    if e.kind == "u":
        return ring.row_minor(e.rows)
    if e.kind == "xi":
        return ring.col_minor(e.cols)
    return ring.one()


def eval_monomial(ring, factors, cache=None):
    out = ring.one()
    for e in factors:
        if cache is not None:
            poly = cache.get(e)
            if poly is None:
                poly = eval_element(ring, e)
                cache[e] = poly
        else:
            poly = eval_element(ring, e)
        out = out * poly
    return out
