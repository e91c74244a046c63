"""Independent ground truth by brute force.

Invariant-space dimensions come from the kernel of the infinitesimal
action on raw monomial spaces, with no reference to standard monomials
or straightening; rank computations use exact fraction-free row
reduction.  Characteristic-zero semantics only: for the connected
groups involved, killing the Lie algebra is the same as invariance.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb

from ._linalg import RowReducer, rank_of_rows
from .errors import ParameterError, ResourceCapError
from .polyring import PolyRing, SparsePoly, lie_derive

DEFAULT_MONOMIAL_CAP = 5000


def _degree_exponents(nvars, degree):
    """All exponent tuples of the given total degree (dense)."""
    out = []
    for picks in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in picks:
            e[v] += 1
        out.append(tuple(e))
    return out


def _bidegree_monomials(ring, a, b):
    un = ring.space.m * ring.space.n
    xin = ring.space.n * ring.space.q
    left = _degree_exponents(un, a)
    right = _degree_exponents(xin, b)
    return [lu + rx for lu in left for rx in right]


def _diag_weights(ring, expt):
    """Per-slot weight: xi-row degree minus u-column degree for each of
    the n inner indices.  Diagonal matrices act on a monomial by these
    weights, so they cut the invariant candidates combinatorially."""
    n, m, q = ring.space.n, ring.space.m, ring.space.q
    w = [0] * n
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            w[j - 1] -= expt[ring.u_index(i, j)]
    for k in range(1, n + 1):
        for l in range(1, q + 1):
            w[k - 1] += expt[ring.xi_index(k, l)]
    return tuple(w)


def invariant_dimension(space, bidegree, group="SL",
                        cap=DEFAULT_MONOMIAL_CAP):
    """Dimension of the invariants of the given bidegree.

    group "SL": joint kernel of the trace-zero algebra; "GL": of the
    full matrix algebra.  The diagonal part of either algebra is
    imposed first as a weight filter, the off-diagonal part by exact
    linear algebra.
    """
    if group not in ("SL", "GL"):
        raise ParameterError("group must be 'SL' or 'GL', got %r" % (group,))
    a, b = bidegree
    if a < 0 or b < 0:
        raise ParameterError("bidegree must be non-negative")
    ring = PolyRing(space)
    n = space.n
    total = comb(a + space.m * n - 1, a) * comb(b + n * space.q - 1, b)
    if total > cap:
        raise ResourceCapError(
            "monomial space has %d elements, over the cap %d" % (total, cap))
    monos = _bidegree_monomials(ring, a, b)

    if group == "GL":
        keep = [e for e in monos if all(w == 0 for w in _diag_weights(ring, e))]
    else:
        keep = [e for e in monos
                if len(set(_diag_weights(ring, e))) <= 1]
    if not keep:
        return 0

    col = {e: i for i, e in enumerate(keep)}
    rows = {}
    offdiag = [(k, l) for k in range(n) for l in range(n) if k != l]
    for j, e in enumerate(keep):
        poly = SparsePoly(ring, {e: 1})
        for t, (k, l) in enumerate(offdiag):
            X = [[0] * n for _ in range(n)]
            X[k][l] = 1
            img = lie_derive(ring, X, poly)
            for tgt, c in img.terms.items():
                rows.setdefault((t, tgt), {})[j] = c
    rank = rank_of_rows(rows[key] for key in sorted(rows))
    return len(keep) - rank


def poly_rank(polys):
    """Exact rank of a family of polynomials over the rationals."""
    red = RowReducer()
    for p in polys:
        red.insert(p.terms)
    return red.rank


def determinantal_dimension(m, q, n, k):
    """Dimension of the degree-k piece of the pairing algebra.

    For the hypersurface case m == q == n+1 the generating function is
    forced: (1 - t^(n+1)) / (1 - t)^(mq).  Otherwise the value is the
    exact rank of all evaluated degree-k monomials in the pairings.
    """
    if k < 0:
        raise ParameterError("degree must be non-negative")
    if m == q == n + 1:
        mq = m * q
        val = comb(k + mq - 1, mq - 1)
        if k >= n + 1:
            val -= comb(k - (n + 1) + mq - 1, mq - 1)
        return val
    ring = PolyRing((n, m, q))
    pairings = [ring.pairing(i, j)
                for i in range(1, m + 1) for j in range(1, q + 1)]
    polys = []
    for picks in combinations_with_replacement(range(len(pairings)), k):
        prod = ring.one()
        for t in picks:
            prod = prod * pairings[t]
        polys.append(prod)
    return poly_rank(polys)
