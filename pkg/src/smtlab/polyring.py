"""Exact sparse polynomials in the matrix entries u_ij and xi_kl.

Coefficients are rationals (fractions.Fraction); there is no floating
point anywhere.  The variable order is global and fixed: all u
variables row-major, then all xi variables row-major, so printed forms
and golden files are byte-stable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations

from .errors import ParameterError
from .poset import Space


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class PolyRing:
    """Polynomial ring attached to a Space; makes variables and minors."""

    def __init__(self, space):
        if not isinstance(space, Space):
            space = Space(*space)
        self.space = space
        n, m, q = space.n, space.m, space.q
        self.nvars = m * n + n * q
        names = []
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                names.append("u[%d,%d]" % (i, j))
        for k in range(1, n + 1):
            for l in range(1, q + 1):
                names.append("xi[%d,%d]" % (k, l))
        self.names = names

    def u_index(self, i, j):
        n, m = self.space.n, self.space.m
        if not (1 <= i <= m and 1 <= j <= n):
            raise ParameterError("u index (%d, %d) out of range" % (i, j))
        return (i - 1) * n + (j - 1)

    def xi_index(self, k, l):
        n, m, q = self.space.n, self.space.m, self.space.q
        if not (1 <= k <= n and 1 <= l <= q):
            raise ParameterError("xi index (%d, %d) out of range" % (k, l))
        return m * n + (k - 1) * q + (l - 1)

    def zero(self):
        return SparsePoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return SparsePoly(self, {(0,) * self.nvars: c})

    def var(self, index):
        expt = [0] * self.nvars
        expt[index] = 1
        return SparsePoly(self, {tuple(expt): Fraction(1)})

    def u_var(self, i, j):
        return self.var(self.u_index(i, j))

    def xi_var(self, k, l):
        return self.var(self.xi_index(k, l))

    def pairing(self, i, j):
        """The invariant <u_i, xi_j> = sum_s u_is xi_sj; n terms."""
        n = self.space.n
        terms = {}
        for s in range(1, n + 1):
            expt = [0] * self.nvars
            expt[self.u_index(i, s)] += 1
            expt[self.xi_index(s, j)] += 1
            terms[tuple(expt)] = Fraction(1)
        return SparsePoly(self, terms)

    def det(self, entries):
        """Determinant of a square matrix of SparsePolys, by signed
        permutation expansion (sizes stay tiny at desk scale)."""
        r = len(entries)
        total = self.zero()
        for perm in permutations(range(r)):
            prod = self.one()
            for i in range(r):
                prod = prod * entries[i][perm[i]]
            total = total + self.const(_perm_sign(perm)) * prod
        return total

    def pairing_minor(self, rows, cols):
        """r x r minor of the pairing matrix on the given rows/columns."""
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise ParameterError(
                "minor needs equal row/column counts: %r vs %r" % (rows, cols))
        return self.det([[self.pairing(i, j) for j in cols] for i in rows])

    def row_minor(self, rows):
        """n-minor of the left m x n matrix on the given rows."""
        n = self.space.n
        rows = tuple(rows)
        if len(rows) != n:
            raise ParameterError("row minor needs exactly %d rows" % n)
        return self.det([[self.u_var(i, j) for j in range(1, n + 1)]
                         for i in rows])

    def col_minor(self, cols):
        """n-minor of the right n x q matrix on the given columns."""
        n = self.space.n
        cols = tuple(cols)
        if len(cols) != n:
            raise ParameterError("column minor needs exactly %d columns" % n)
        return self.det([[self.xi_var(k, l) for l in cols]
                         for k in range(1, n + 1)])


class SparsePoly:
    """Immutable-by-convention sparse polynomial; terms maps dense
    exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.ring.space == other.ring.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.space, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = self.ring.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly(self.ring, out)

    def __neg__(self):
        return SparsePoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = self.ring.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return SparsePoly(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return SparsePoly(self.ring, {e: c * v for e, v in self.terms.items()})

    def bidegree(self):
        """(u-degree, xi-degree) if every term agrees, else None."""
        un = self.ring.space.m * self.ring.space.n
        seen = None
        for e in self.terms:
            a = sum(e[:un])
            b = sum(e[un:])
            if seen is None:
                seen = (a, b)
            elif seen != (a, b):
                return None
        return seen if seen is not None else (0, 0)

    def sorted_terms(self):
        """Terms in the canonical order: degree-lex, leading term first."""
        return sorted(self.terms.items(),
                      key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            for idx, exp in enumerate(e):
                if exp:
                    factors.append("%s^%d" % (self.ring.names[idx], exp))
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


_VAR_RE = re.compile(r"^(u|xi)\[(\d+),(\d+)\]\^(\d+)$")


def parse_poly(ring, text):
    """Inverse of str(); accepts the exact printed form."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    terms = {}
    for part in text.split(" + "):
        factors = part.split(" * ")
        coeff = Fraction(factors[0])
        expt = [0] * ring.nvars
        for f in factors[1:]:
            m = _VAR_RE.match(f.strip())
            if not m:
                raise ParameterError("cannot parse factor %r" % (f,))
            kind, a, b, e = m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))
            idx = ring.u_index(a, b) if kind == "u" else ring.xi_index(a, b)
            expt[idx] += e
        key = tuple(expt)
        v = terms.get(key, 0) + coeff
        if v:
            terms[key] = v
        else:
            terms.pop(key, None)
    return SparsePoly(ring, terms)


def lie_derive(ring, X, f):
    """Derivation of the one-parameter flow of the group action.

    X is any n x n rational matrix.  The action sends the left matrix U
    to U A^{-1} and the right matrix W to A W, so infinitesimally

        X . f = sum_{k,l} (X W)_{kl} df/dxi_{kl}
              - sum_{i,j} (U X)_{ij} df/du_{ij}

    Minors of U pick up -trace(X); pairings are killed by every X.
    """
    n, m, q = ring.space.n, ring.space.m, ring.space.q
    X = [[Fraction(v) for v in row] for row in X]
    if len(X) != n or any(len(row) != n for row in X):
        raise ParameterError("X must be %d x %d" % (n, n))
    out = {}

    def _acc(expt, coeff):
        if coeff:
            v = out.get(expt, 0) + coeff
            if v:
                out[expt] = v
            else:
                out.pop(expt, None)

    for e, c in f.terms.items():
        # xi part: (XW)_{kl} = sum_s X[k][s] xi_{sl}
        for k in range(1, n + 1):
            for l in range(1, q + 1):
                idx = ring.xi_index(k, l)
                exp = e[idx]
                if not exp:
                    continue
                base = list(e)
                base[idx] -= 1
                for s in range(1, n + 1):
                    if X[k - 1][s - 1] == 0:
                        continue
                    t = list(base)
                    t[ring.xi_index(s, l)] += 1
                    _acc(tuple(t), c * exp * X[k - 1][s - 1])
        # u part: (UX)_{ij} = sum_s u_{is} X[s][j]
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                idx = ring.u_index(i, j)
                exp = e[idx]
                if not exp:
                    continue
                base = list(e)
                base[idx] -= 1
                for s in range(1, n + 1):
                    if X[s - 1][j - 1] == 0:
                        continue
                    t = list(base)
                    t[ring.u_index(i, s)] += 1
                    _acc(tuple(t), -c * exp * X[s - 1][j - 1])
    return SparsePoly(ring, out)


def sl_basis(n):
    """Basis of the trace-zero n x n matrices: E_kl (k != l) and
    E_ss - E_{s+1,s+1}."""
    out = []
    for k in range(n):
        for l in range(n):
            if k != l:
                mat = [[0] * n for _ in range(n)]
                mat[k][l] = 1
                out.append(mat)
    for s in range(n - 1):
        mat = [[0] * n for _ in range(n)]
        mat[s][s] = 1
        mat[s + 1][s + 1] = -1
        out.append(mat)
    return out


def gl_basis(n):
    """Basis of all n x n matrices: every E_kl."""
    out = []
    for k in range(n):
        for l in range(n):
            mat = [[0] * n for _ in range(n)]
            mat[k][l] = 1
            out.append(mat)
    return out


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
