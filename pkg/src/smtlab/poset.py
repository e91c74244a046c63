"""Generator poset, bounded lattice, and chain-product embedding.

Generators come in three families over an ambient ``Space(n, m, q)``
(m row vectors and q column vectors pairing through dimension n,
with m, q > n):

* ``u[I]``  -- n-row minors of the m x n left matrix, I in I(n, m)
* ``xi[J]`` -- n-column minors of the n x q right matrix, J in I(n, q)
* ``p[A|B]`` -- r x r minors of the m x q pairing matrix, 1 <= r <= n

Here I(r, k) is the set of strictly increasing r-tuples from 1..k.
The order rules:

1. p-elements compare coordinatewise in the reversed-cardinality tuple
   order (smaller minors sit higher when their indices dominate);
2. u-elements (and xi-elements) compare componentwise among themselves;
3. u- and xi-elements are never comparable;
4. no u- or xi-element lies above any p-element;
5. ``u[I] <= p[A|B]`` iff I <= A, and ``xi[J] <= p[A|B]`` iff J <= B.

Adjoining TOP and BOT yields a bounded poset that becomes a
distributive lattice through an embedding into the chain product
C(m,...,m,q,...,q) by (2n+2)-tuples.  The printed padding scheme
(pad with m resp. q, then a trailing 1) identifies certain comparable
pairs -- a tuple ending in m reads both long and short -- so preimages
of a chain vector are resolved against the order itself when computing
joins and meets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .errors import InvariantViolation, ParameterError, ResourceCapError

DEFAULT_POSET_CAP = 200


@dataclass(frozen=True)
class Space:
    """Ambient sizes; rejects m <= n or q <= n."""

    n: int
    m: int
    q: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be >= 1, got %r" % (self.n,))
        if self.m <= self.n or self.q <= self.n:
            raise ParameterError(
                "need m > n and q > n, got (n, m, q) = (%d, %d, %d)"
                % (self.n, self.m, self.q))


@dataclass(frozen=True)
class Element:
    """A tagged generator symbol, or one of the adjoined bounds.

    kind is one of "p", "u", "xi", "top", "bot".  For "p", ``rows`` and
    ``cols`` hold the two index tuples; "u" uses ``rows`` only and "xi"
    uses ``cols`` only.
    """

    kind: str
    rows: tuple = ()
    cols: tuple = ()

    def __repr__(self):
        return "Element(%s)" % format_element(self)


TOP = Element("top")
BOT = Element("bot")


def _check_tuple(t, what):
    if any(x < 1 for x in t):
        raise ParameterError("%s entries must be positive: %r" % (what, t))
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise ParameterError("%s must be strictly increasing: %r" % (what, t))


def u_gen(rows):
    rows = tuple(rows)
    _check_tuple(rows, "u index tuple")
    return Element("u", rows=rows)


def xi_gen(cols):
    cols = tuple(cols)
    _check_tuple(cols, "xi index tuple")
    return Element("xi", cols=cols)


def p_gen(rows, cols):
    rows, cols = tuple(rows), tuple(cols)
    _check_tuple(rows, "p row tuple")
    _check_tuple(cols, "p column tuple")
    if len(rows) != len(cols):
        raise ParameterError(
            "p minor needs equal row/column counts: %r vs %r" % (rows, cols))
    if not rows:
        raise ParameterError("empty p minor is not a generator")
    return Element("p", rows=rows, cols=cols)


def validate_element(space, e):
    """Raise ParameterError unless ``e`` fits inside ``space``."""
    n, m, q = space.n, space.m, space.q
    if e.kind == "u":
        if len(e.rows) != n or (e.rows and e.rows[-1] > m):
            raise ParameterError("u tuple must lie in I(%d, %d): %r" % (n, m, e))
    elif e.kind == "xi":
        if len(e.cols) != n or (e.cols and e.cols[-1] > q):
            raise ParameterError("xi tuple must lie in I(%d, %d): %r" % (n, q, e))
    elif e.kind == "p":
        if len(e.rows) > n:
            raise ParameterError("p minor size must be <= %d: %r" % (n, e))
        if e.rows[-1] > m or e.cols[-1] > q:
            raise ParameterError("p minor indices out of range: %r" % (e,))
    elif e.kind not in ("top", "bot"):
        raise ParameterError("unknown element kind %r" % (e.kind,))
    return e


# ---------------------------------------------------------------------------
# index tuples and the order


def enumerate_tuples(r, n):
    """All strictly increasing r-tuples from 1..n, lexicographically."""
    if r < 0 or r > n:
        raise ParameterError("need 0 <= r <= n, got r=%d, n=%d" % (r, n))
    return [tuple(c) for c in combinations(range(1, n + 1), r)]


def leq_tuple(a, b):
    """a <= b in the reversed-cardinality order.

    b dominates a iff b is no longer than a and b's entries dominate
    the first len(b) entries of a.  The empty tuple is the maximum.
    """
    if len(b) > len(a):
        return False
    return all(b[j] >= a[j] for j in range(len(b)))


def leq_pair(x, y):
    """(A, B) <= (A', B') coordinatewise in the reversed order; allows ()."""
    return leq_tuple(x[0], y[0]) and leq_tuple(x[1], y[1])


def element_leq(x, y):
    """The order on generators plus adjoined bounds (rules 1-5 above)."""
    if x == y:
        return True
    if x.kind == "bot" or y.kind == "top":
        return True
    if x.kind == "top" or y.kind == "bot":
        return False
    if x.kind == "p":
        # rule 4: nothing but p (or top) sits above a p-element
        return y.kind == "p" and leq_tuple(x.rows, y.rows) and leq_tuple(x.cols, y.cols)
    if x.kind == "u":
        if y.kind == "u":
            return leq_tuple(x.rows, y.rows)
        if y.kind == "p":
            return leq_tuple(x.rows, y.rows)  # rule 5, row side
        return False  # rule 3
    if x.kind == "xi":
        if y.kind == "xi":
            return leq_tuple(x.cols, y.cols)
        if y.kind == "p":
            return leq_tuple(x.cols, y.cols)  # rule 5, column side
        return False
    raise ParameterError("unknown element kind %r" % (x.kind,))


def element_lt(x, y):
    return x != y and element_leq(x, y)


def comparable(x, y):
    return element_leq(x, y) or element_leq(y, x)


# ---------------------------------------------------------------------------
# enumeration


def generator_elements(space):
    """All generators over ``space``, deduplicated, in a fixed order."""
    n, m, q = space.n, space.m, space.q
    out = [u_gen(t) for t in enumerate_tuples(n, m)]
    out.extend(xi_gen(t) for t in enumerate_tuples(n, q))
    for r in range(1, n + 1):
        for a in enumerate_tuples(r, m):
            for b in enumerate_tuples(r, q):
                out.append(p_gen(a, b))
    return out


def lattice_elements(space):
    """The generators together with TOP and BOT."""
    return [TOP] + generator_elements(space) + [BOT]


# ---------------------------------------------------------------------------
# chain-product embedding


def _bar(t, bound, n):
    # r entries, then (n - r) copies of the bound, then a trailing 1
    return t + (bound,) * (n - len(t)) + (1,)


def embed_chain(space, e):
    """The (2n+2)-tuple placing ``e`` inside C(m,...,m,q,...,q)."""
    n, m, q = space.n, space.m, space.q
    if e.kind == "p":
        return _bar(e.rows, m, n) + _bar(e.cols, q, n)
    if e.kind == "u":
        return e.rows + (1,) * (n + 2)
    if e.kind == "xi":
        return (1,) * (n + 1) + e.cols + (1,)
    if e.kind == "top":
        return (m,) * (n + 1) + (q,) * (n + 1)
    if e.kind == "bot":
        return (1,) * (2 * n + 2)
    raise ParameterError("unknown element kind %r" % (e.kind,))


def _strictly_increasing(t):
    return all(t[i] < t[i + 1] for i in range(len(t) - 1))


def _tuple_readings(half, bound, n):
    """Cardinalities r such that ``half`` == _bar(t, bound, n) for some t."""
    out = []
    if half[-1] != 1:
        return out
    for r in range(1, n + 1):
        body, pad = half[:r], half[r:n]
        if _strictly_increasing(body) and body[-1] <= bound and all(x == bound for x in pad):
            out.append(r)
    return out


def chain_preimages(space, vec):
    """Every element of the bounded lattice whose embedding equals ``vec``.

    The padding scheme can read a p-half at two cardinalities when the
    index tuple ends at the bound, so this may return more than one
    element; callers disambiguate against the order.
    """
    n, m, q = space.n, space.m, space.q
    if len(vec) != 2 * n + 2:
        raise ParameterError("chain vector must have length %d" % (2 * n + 2))
    left, right = vec[: n + 1], vec[n + 1:]
    out = []
    if vec == embed_chain(space, TOP):
        out.append(TOP)
    if vec == embed_chain(space, BOT):
        out.append(BOT)
    if right == (1,) * (n + 1) and left[-1] == 1:
        body = left[:n]
        if _strictly_increasing(body) and body[-1] <= m:
            e = Element("u", rows=body)
            if e not in out:
                out.append(e)
    if left == (1,) * (n + 1) and right[-1] == 1:
        body = right[:n]
        if _strictly_increasing(body) and body[-1] <= q:
            e = Element("xi", cols=body)
            if e not in out:
                out.append(e)
    rows_r = _tuple_readings(left, m, n)
    cols_r = _tuple_readings(right, q, n)
    for r in rows_r:
        if r in cols_r:
            e = Element("p", rows=left[:r], cols=right[:r])
            if e not in out:
                out.append(e)
    return out


def _resolve(space, vec, bound_test, pick_extreme):
    cands = [c for c in chain_preimages(space, vec) if bound_test(c)]
    if not cands:
        raise InvariantViolation(
            "chain vector %r has no suitable preimage" % (vec,))
    best = cands[0]
    for c in cands[1:]:
        if pick_extreme(c, best):
            best = c
    for c in cands:
        if not pick_extreme(best, c) and best != c:
            raise InvariantViolation(
                "ambiguous preimages %r for %r" % (cands, vec))
    return best


def lattice_join(space, x, y):
    """Least upper bound in the bounded lattice."""
    if element_leq(x, y):
        return y
    if element_leq(y, x):
        return x
    vx, vy = embed_chain(space, x), embed_chain(space, y)
    vmax = tuple(max(a, b) for a, b in zip(vx, vy))
    return _resolve(
        space, vmax,
        lambda c: element_leq(x, c) and element_leq(y, c),
        element_leq)


def lattice_meet(space, x, y):
    """Greatest lower bound in the bounded lattice."""
    if element_leq(x, y):
        return x
    if element_leq(y, x):
        return y
    vx, vy = embed_chain(space, x), embed_chain(space, y)
    vmin = tuple(min(a, b) for a, b in zip(vx, vy))
    return _resolve(
        space, vmin,
        lambda c: element_leq(c, x) and element_leq(c, y),
        lambda a, b: element_leq(b, a))


def sort_key(space, e):
    """Total order key; sorting ascending lists factors weakly decreasing.

    TOP first, then p-elements by ascending minor size and descending
    chain vector, then u, then xi, BOT last.  This extends the poset
    order on every comparable pair (larger elements never have larger
    minors), and putting the size before the embedding keeps the
    rewriting weight strictly increasing even across pairs the padded
    embedding cannot tell apart.
    """
    block = {"top": 0, "p": 1, "u": 2, "xi": 3, "bot": 4}[e.kind]
    vec = embed_chain(space, e)
    return (block, len(e.rows) + len(e.cols), tuple(-v for v in vec))


# ---------------------------------------------------------------------------
# minors attached to Grassmannian index tuples


def minor_by_reversal(i, d, n):
    """Order-reversing bijection from I(d, n) onto minors of an
    (n-d) x d matrix, as (rows, cols); the identity tuple maps to ((), ()).

    Entries above d are reflected through n+1 to give row indices; the
    entries at most d leave their complement in 1..d as column indices.
    Reverses the order: i <= i' iff the image of i dominates the image
    of i' in the reversed-cardinality pair order.
    """
    i = tuple(i)
    _check_tuple(i, "index tuple")
    if len(i) != d or (i and i[-1] > n):
        raise ParameterError("tuple must lie in I(%d, %d): %r" % (d, n, i))
    mm = 0
    while mm < d and i[mm] <= d:
        mm += 1
    rows = tuple(n + 1 - i[t] for t in range(d - 1, mm - 1, -1))
    lower = set(i[:mm])
    cols = tuple(c for c in range(1, d + 1) if c not in lower)
    return rows, cols


def minor_by_shift(j, d, n):
    """Minor of the lower (n-d) x d block cut out by j in I(d, n).

    Row indices are shifted down by d (renumbered from 1); column
    indices are the complement in 1..d of the entries at most d.  The
    identity tuple maps to the empty minor (the constant 1).
    """
    j = tuple(j)
    _check_tuple(j, "index tuple")
    if len(j) != d or (j and j[-1] > n):
        raise ParameterError("tuple must lie in I(%d, %d): %r" % (d, n, j))
    r = 0
    while r < d and j[r] <= d:
        r += 1
    lower = set(j[:r])
    cols = tuple(c for c in range(1, d + 1) if c not in lower)
    rows = tuple(j[t] - d for t in range(r, d))
    return rows, cols


# ---------------------------------------------------------------------------
# chains and ranks


def _cover_lists(elements, leq):
    n = len(elements)
    less = [[j for j in range(n) if j != i and leq(elements[j], elements[i])]
            for i in range(n)]
    covers_up = [[] for _ in range(n)]
    for i in range(n):
        below = set(less[i])
        for j in below:
            # j covered by i iff nothing sits strictly between
            if not any(k in below and leq(elements[j], elements[k])
                       and k != j for k in below):
                covers_up[j].append(i)
    return covers_up


def maximal_chains_of(elements, leq):
    """All maximal chains of an arbitrary finite poset, as element lists."""
    n = len(elements)
    covers_up = _cover_lists(elements, leq)
    has_lower = [False] * n
    for i in range(n):
        for j in covers_up[i]:
            has_lower[j] = True
    minimals = [i for i in range(n) if not has_lower[i]]
    chains = []
    stack = [(i, [i]) for i in reversed(minimals)]
    while stack:
        node, path = stack.pop()
        ups = covers_up[node]
        if not ups:
            chains.append([elements[k] for k in path])
        else:
            for nxt in reversed(ups):
                stack.append((nxt, path + [nxt]))
    return chains


def _poset_elements(space, poset):
    if poset == "H":
        return generator_elements(space)
    if poset == "D":
        return lattice_elements(space)
    raise ParameterError("poset must be 'H' or 'D', got %r" % (poset,))


def maximal_chains(space, poset="H", cap=DEFAULT_POSET_CAP):
    """Every maximal chain of the chosen poset (exponential; guarded)."""
    elements = _poset_elements(space, poset)
    if len(elements) > cap:
        raise ResourceCapError(
            "poset has %d elements, over the cap %d" % (len(elements), cap))
    return maximal_chains_of(elements, element_leq)


def chain_length_extremes(elements, leq):
    """(min, max) cardinality over all maximal chains, by DP over covers.

    Covers every maximal chain without materializing them; equality of
    the two values is exactly the ranked-poset condition.
    """
    n = len(elements)
    covers_up = _cover_lists(elements, leq)
    has_lower = [False] * n
    for i in range(n):
        for j in covers_up[i]:
            has_lower[j] = True
    order = []
    seen = [False] * n
    # topological order: repeatedly peel elements whose lower covers are done
    indeg = [0] * n
    for i in range(n):
        for j in covers_up[i]:
            indeg[j] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    while ready:
        v = ready.pop()
        order.append(v)
        for w in covers_up[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    lo = [1] * n
    hi = [1] * n
    for v in order:
        if has_lower[v]:
            lo[v] = 1 + min(lo[u] for u in range(n) if v in covers_up[u])
            hi[v] = 1 + max(hi[u] for u in range(n) if v in covers_up[u])
    tops = [i for i in range(n) if not covers_up[i]]
    return min(lo[t] for t in tops), max(hi[t] for t in tops)


def poset_rank(space, poset="H", cap=DEFAULT_POSET_CAP):
    """Common maximal-chain cardinality minus one; raises if not ranked."""
    elements = _poset_elements(space, poset)
    if len(elements) > cap:
        raise ResourceCapError(
            "poset has %d elements, over the cap %d" % (len(elements), cap))
    lo, hi = chain_length_extremes(elements, element_leq)
    if lo != hi:
        raise InvariantViolation(
            "%s poset is not ranked: chain sizes range %d..%d" % (poset, lo, hi))
    return lo - 1


def rank_formula(space, poset="H"):
    """Expected rank: (m+q)n - n^2 for H, two more for D."""
    d = (space.m + space.q) * space.n - space.n * space.n
    return d if poset == "H" else d + 2


# ---------------------------------------------------------------------------
# text forms


_ELEMENT_RE = re.compile(
    r"^(?:(u|xi)\[(\d+(?:,\d+)*)\]|p\[(\d+(?:,\d+)*)\|(\d+(?:,\d+)*)\]|TOP|BOT)$")


def format_element(e):
    if e.kind == "u":
        return "u[%s]" % ",".join(map(str, e.rows))
    if e.kind == "xi":
        return "xi[%s]" % ",".join(map(str, e.cols))
    if e.kind == "p":
        return "p[%s|%s]" % (",".join(map(str, e.rows)),
                             ",".join(map(str, e.cols)))
    return {"top": "TOP", "bot": "BOT"}[e.kind]


def parse_element(text, space=None):
    m = _ELEMENT_RE.match(text.strip())
    if not m:
        raise ParameterError("cannot parse element %r" % (text,))
    if text.strip() == "TOP":
        e = TOP
    elif text.strip() == "BOT":
        e = BOT
    elif m.group(1) == "u":
        e = u_gen(int(x) for x in m.group(2).split(","))
    elif m.group(1) == "xi":
        e = xi_gen(int(x) for x in m.group(2).split(","))
    else:
        e = p_gen((int(x) for x in m.group(3).split(",")),
                  (int(x) for x in m.group(4).split(",")))
    if space is not None:
        validate_element(space, e)
    return e


def format_chain_vector(vec):
    return "[%s]" % ",".join(map(str, vec))


def parse_chain_vector(text):
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParameterError("cannot parse chain vector %r" % (text,))
    return tuple(int(x) for x in body[1:-1].split(","))
