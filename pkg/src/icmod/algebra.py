"""Exact arithmetic substrate: monomials, bivariate integer polynomials, exact ranks.

Everything in this module is immutable and pure, so values can be shared and
evaluated concurrently without coordination.  Coefficients are arbitrary
precision integers; ranks are ranks over the rationals.  A fixed prime field
is used only as a certified fast path and never decides a rank on its own.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, NamedTuple

FAST_PRIME = 1_000_003  # fixed prime > 10**6 for the elimination pre-pass


def tri(n: int) -> int:
    """Number of monomials in two variables of total degree < n."""
    return n * (n + 1) // 2


def monomial_position(a: int, b: int) -> int:
    """Index of x^a y^b in the degree-lex enumeration (x before y)."""
    d = a + b
    return tri(d) + b


class Monomial(NamedTuple):
    """Exponent pair (a, b) standing for x^a y^b."""

    a: int
    b: int

    @property
    def degree(self) -> int:
        return self.a + self.b

    def divides(self, other: "Monomial") -> bool:
        return self.a <= other.a and self.b <= other.b

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(self.a + other.a, self.b + other.b)


def _term_key(item):
    mon, _ = item
    return (-(mon.a + mon.b), -mon.a)


class BiPoly:
    """Bivariate polynomial with integer coefficients, stored sparsely.

    The zero polynomial is the empty term map; stored coefficients are never
    zero.  Term order for display and serialization is degree-lex with x
    before y, highest terms first.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable | dict | None = None):
        clean: dict[Monomial, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mon, c in items:
                if not c:
                    continue
                m = Monomial(int(mon[0]), int(mon[1]))
                if m.a < 0 or m.b < 0:
                    raise ValueError("negative exponent in polynomial term")
                nc = clean.get(m, 0) + c
                if nc:
                    clean[m] = nc
                elif m in clean:
                    del clean[m]
        self._terms = clean

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def one(cls) -> "BiPoly":
        return cls.term(0, 0, 1)

    @classmethod
    def term(cls, a: int, b: int, c: int = 1) -> "BiPoly":
        p = cls.__new__(cls)
        p._terms = {Monomial(a, b): c} if c else {}
        return p

    def items(self) -> list[tuple[Monomial, int]]:
        """Terms in canonical order (degree-lex, x before y, descending)."""
        return sorted(self._terms.items(), key=_term_key)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(m.a + m.b for m in self._terms)

    @property
    def order(self) -> int | None:
        """Minimal total degree of a term; None for the zero polynomial."""
        if not self._terms:
            return None
        return min(m.a + m.b for m in self._terms)

    def single_term(self) -> tuple[int, int, int]:
        if len(self._terms) != 1:
            raise ValueError("polynomial is not a single term")
        (mon, c), = self._terms.items()
        return (mon.a, mon.b, c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self._terms)
        for mon, c in other._terms.items():
            nc = out.get(mon, 0) + c
            if nc:
                out[mon] = nc
            elif mon in out:
                del out[mon]
        p = BiPoly.__new__(BiPoly)
        p._terms = out
        return p

    def __neg__(self) -> "BiPoly":
        p = BiPoly.__new__(BiPoly)
        p._terms = {m: -c for m, c in self._terms.items()}
        return p

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return BiPoly.zero()
            p = BiPoly.__new__(BiPoly)
            p._terms = {m: c * other for m, c in self._terms.items()}
            return p
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mon = Monomial(m1.a + m2.a, m1.b + m2.b)
                nc = out.get(mon, 0) + c1 * c2
                if nc:
                    out[mon] = nc
                elif mon in out:
                    del out[mon]
        p = BiPoly.__new__(BiPoly)
        p._terms = out
        return p

    __rmul__ = __mul__

    def to_triples(self) -> list[list[int]]:
        """Serialize as [a, b, coefficient] triples in canonical order."""
        return [[m.a, m.b, c] for m, c in self.items()]

    @classmethod
    def from_triples(cls, triples) -> "BiPoly":
        return cls((Monomial(int(t[0]), int(t[1])), int(t[2])) for t in triples)

    def __repr__(self) -> str:
        return f"BiPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mon, c in self.items():
            body = []
            if mon.a:
                body.append("x" if mon.a == 1 else f"x^{mon.a}")
            if mon.b:
                body.append("y" if mon.b == 1 else f"y^{mon.b}")
            mag = abs(c)
            if mag != 1 or not body:
                body.insert(0, str(mag))
            frag = "*".join(body)
            if not parts:
                parts.append(frag if c > 0 else f"-{frag}")
            else:
                parts.append(f"+ {frag}" if c > 0 else f"- {frag}")
        return " ".join(parts)


X = BiPoly.term(1, 0)
Y = BiPoly.term(0, 1)


def poly_add(p: BiPoly, q: BiPoly) -> BiPoly:
    """Coefficientwise sum with zero terms dropped."""
    return p + q


def poly_mul(p: BiPoly, q: BiPoly) -> BiPoly:
    """Exact product in canonical term order."""
    return p * q


def truncate(p: BiPoly, n: int) -> BiPoly:
    """Drop all terms of total degree >= n (working modulo the n-th power of the maximal ideal)."""
    if n < 0:
        raise ValueError("truncation level must be nonnegative")
    return BiPoly((m, c) for m, c in p._terms.items() if m.a + m.b < n)


# ---------------------------------------------------------------------------
# exact rank computation
# ---------------------------------------------------------------------------

def rank_exact(rows, prime_prepass: bool = True) -> int:
    """Rank over the rationals of an integer matrix given as a list of rows.

    A single fixed prime field elimination may certify the answer quickly:
    the mod-p rank is always a lower bound, so full row or column rank mod p
    is already exact.  Anything short of that falls back to fraction-free
    Bareiss elimination over the integers.
    """
    mat = [list(map(int, row)) for row in rows]
    if not mat:
        return 0
    n = len(mat[0])
    if any(len(row) != n for row in mat):
        raise ValueError("matrix rows have unequal lengths")
    if n == 0:
        return 0
    if prime_prepass:
        rp = _rank_mod_p([row[:] for row in mat], FAST_PRIME)
        if rp == min(len(mat), n):
            return rp
    return _rank_bareiss([row[:] for row in mat])


def _rank_mod_p(mat, p: int) -> int:
    m, n = len(mat), len(mat[0])
    for row in mat:
        for j in range(n):
            row[j] %= p
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = None
        for i in range(rank, m):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        prow = mat[rank]
        for j in range(col, n):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, m):
            f = mat[i][col]
            if f:
                row = mat[i]
                for j in range(col, n):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
        col += 1
    return rank


def _rank_bareiss(mat) -> int:
    m, n = len(mat), len(mat[0])
    rank = 0
    prev = 1
    rows = list(range(m))
    cols = list(range(n))
    while rank < len(rows) and rank < len(cols):
        piv = None
        for i in range(rank, len(rows)):
            for j in range(rank, len(cols)):
                if mat[rows[i]][cols[j]]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        rows[rank], rows[pi] = rows[pi], rows[rank]
        cols[rank], cols[pj] = cols[pj], cols[rank]
        pr = rows[rank]
        pc = cols[rank]
        pivot = mat[pr][pc]
        for i in range(rank + 1, len(rows)):
            ri = rows[i]
            f = mat[ri][pc]
            for j in range(rank + 1, len(cols)):
                cj = cols[j]
                mat[ri][cj] = (mat[ri][cj] * pivot - f * mat[pr][cj]) // prev
            mat[ri][pc] = 0
        prev = pivot
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# incremental row spans for the truncation engines
# ---------------------------------------------------------------------------

class GraphSpan:
    """Incremental rank of rows having at most two nonzero entries.

    Rows must be single entries (any nonzero coefficient) or pairs of entries
    with equal coefficient magnitude.  Such rows form a signed graph on the
    coordinate set; a component either spans a hyperplane cut out by a +-1
    potential or the full coordinate subspace.  Rank queries and membership
    tests are then near-constant time.
    """

    __slots__ = ("parent", "sign", "full", "size", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.sign = [1] * n
        self.full = bytearray(n)
        self.size = [1] * n
        self.rank = 0

    def _find(self, u: int) -> tuple[int, int]:
        parent = self.parent
        sign = self.sign
        path = []
        while parent[u] != u:
            path.append(u)
            u = parent[u]
        acc = 1
        for node in reversed(path):
            acc *= sign[node]
            parent[node] = u
            sign[node] = acc
        return u, acc

    def add(self, row) -> bool:
        """Insert a row; return True when it increased the rank."""
        if len(row) == 1:
            u, _c = row[0]
            r, _ = self._find(u)
            if self.full[r]:
                return False
            self.full[r] = 1
            self.rank += 1
            return True
        (u, cu), (v, cv) = row
        if abs(cu) != abs(cv):
            raise ValueError("pair row with unequal magnitudes")
        ru, su = self._find(u)
        rv, sv = self._find(v)
        eu = su * (1 if cu > 0 else -1)
        ev = sv * (1 if cv > 0 else -1)
        if ru == rv:
            if self.full[ru]:
                return False
            if eu + ev == 0:
                return False  # consistent with the component potential
            self.full[ru] = 1
            self.rank += 1
            return True
        if self.full[ru] and self.full[rv]:
            self._union(ru, rv, 1)
            return False
        # potential ratio making the new row orthogonal to the glued functional
        self._union(ru, rv, -eu * ev)
        self.rank += 1
        return True

    def _union(self, ru: int, rv: int, rel: int) -> None:
        # rel is the required sign of root rv relative to root ru
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.sign[rv] = rel
        self.size[ru] += self.size[rv]
        if self.full[rv]:
            self.full[ru] = 1

    def contains_single(self, u: int) -> bool:
        r, _ = self._find(u)
        return bool(self.full[r])


class PivotSpan:
    """Incremental exact rank for general sparse integer rows.

    Rows are dicts coordinate -> coefficient.  Reduction keeps integer
    entries, clearing content as it goes; pivots are chosen on the smallest
    coordinate index, which in the engines below means lowest degree first.
    """

    __slots__ = ("pivots", "rank")

    def __init__(self, n: int | None = None):
        self.pivots: dict[int, dict[int, int]] = {}
        self.rank = 0

    @staticmethod
    def _normalize(row: dict[int, int], lead: int) -> None:
        g = 0
        for v in row.values():
            g = gcd(g, v)
            if g == 1:
                break
        if row[lead] < 0:
            g = -g
        if g not in (0, 1):
            for c in row:
                row[c] //= g

    def _reduce(self, row: dict[int, int]) -> tuple[dict[int, int], int | None]:
        # Registered pivot rows have their lead at their minimal coordinate, so
        # reduction only ever adds coordinates above the current one and the
        # lead cursor moves strictly upward.
        pivots = self.pivots
        if not row:
            return row, None
        cursor = min(row)
        get = row.get
        while row:
            while cursor not in row:
                cursor += 1
            piv = pivots.get(cursor)
            if piv is None:
                return row, cursor
            a = piv[cursor]
            b = row.pop(cursor)
            if a == 1:
                mul = b
            elif b % a == 0:
                mul = b // a
            else:
                g = gcd(a, b)
                scale = a // g
                mul = b // g
                for c in row:
                    row[c] *= scale
            for c, v in piv.items():
                if c == cursor:
                    continue
                w = get(c, 0) - mul * v
                if w:
                    row[c] = w
                elif c in row:
                    del row[c]
            cursor += 1
        return row, None

    def add(self, row) -> bool:
        work = dict(row) if not isinstance(row, dict) else dict(row)
        work = {c: v for c, v in work.items() if v}
        work, lead = self._reduce(work)
        if lead is None:
            return False
        self._normalize(work, lead)
        self.pivots[lead] = work
        self.rank += 1
        return True

    def contains_single(self, u: int) -> bool:
        work, lead = self._reduce({u: 1})
        return lead is None
