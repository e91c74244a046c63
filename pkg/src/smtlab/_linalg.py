"""Exact linear algebra over the rationals.

Everything here works with sparse vectors (dict key -> coefficient) and
keeps all arithmetic in integers after clearing denominators, so ranks
and solutions are exact.  Pivoting is deterministic: first nonzero
position in a fixed key order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import BasisFailureError


def _to_int_row(vec):
    """Clear denominators and divide out the content; returns dict key->int."""
    row = {k: Fraction(v) for k, v in vec.items() if v != 0}
    if not row:
        return {}
    denom = 1
    for v in row.values():
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = {k: int(v * denom) for k, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {k: v // g for k, v in ints.items()}
    # normalize sign of the leading entry for reproducibility
    lead = min(ints)
    if ints[lead] < 0:
        ints = {k: -v for k, v in ints.items()}
    return ints


class RowReducer:
    """Incremental row-echelon accumulator.

    insert() reduces the vector against the current pivots and either
    absorbs it as a new pivot row (returning True) or finds it dependent
    (returning False).  Keys must be totally ordered.
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Return the fully reduced integer row for ``vec`` (may be empty)."""
        row = _to_int_row(vec)
        while row:
            lead = min(row)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return row
            a, b = pivot[lead], row[lead]
            new = {}
            for k in row.keys() | pivot.keys():
                v = row.get(k, 0) * a - pivot.get(k, 0) * b
                if v:
                    new[k] = v
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new
        return row

    def insert(self, vec):
        row = self.reduce(vec)
        if not row:
            return False
        lead = min(row)
        if row[lead] < 0:
            row = {k: -v for k, v in row.items()}
        self.pivots[lead] = row
        return True


def rank_of_rows(rows):
    red = RowReducer()
    for r in rows:
        red.insert(r)
    return red.rank


def solve_unique(columns, target):
    """Solve sum_j x_j * columns[j] == target exactly.

    columns: list of sparse vectors (dict key -> Fraction/int)
    target:  sparse vector

    Returns the unique list of Fractions, or raises BasisFailureError if
    the system is inconsistent or the solution is not unique.
    """
    keys = set(target)
    for col in columns:
        keys.update(col)
    keys = sorted(keys)
    ncols = len(columns)
    rows = []
    for k in keys:
        row = [Fraction(col.get(k, 0)) for col in columns]
        row.append(Fraction(target.get(k, 0)))
        rows.append(row)

    pivot_of_col = {}
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_of_col[c] = r
        r += 1

    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            raise BasisFailureError("inconsistent linear system")
    free = [c for c in range(ncols) if c not in pivot_of_col]
    if free:
        raise BasisFailureError(
            "underdetermined linear system (free columns %r)" % free)
    return [rows[pivot_of_col[c]][ncols] for c in range(ncols)]
