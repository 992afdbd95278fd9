"""Presentation matrices of finite-colength submodules of a free module.

Builds the rank-e module attached to a normalized staircase, computes Fitting
ideals from exact minors, and certifies minimal generator counts and
colengths by truncated linear algebra with a Nakayama stopping certificate.
Pure computation throughout; the minor sweep and the truncated spans are
deterministic regardless of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .algebra import BiPoly, GraphSpan, Monomial, PivotSpan, X, Y, tri
from .staircase import MonomialIdeal, NotPrimary, canonicalize


class RankOutOfRange(ValueError):
    """Requested rank outside 2..r."""


class NegativeExponent(ValueError):
    """Shifted x-exponents would become negative."""


class NotNormalized(ValueError):
    """Staircase violates the normalization expected by the construction."""


class NonMonomialIdeal(RuntimeError):
    """Minor ideal could not be certified monomial."""


class NotFiniteColength(RuntimeError):
    """Nakayama certificate failed up to the configured truncation cap."""


class _AbortColength(Exception):
    """Internal: partial colength already exceeded the caller's threshold."""


@dataclass(frozen=True)
class ModuleSpec:
    """Shifted exponent data defining the rank-e module of a staircase."""

    ideal: MonomialIdeal
    rank: int
    aprime: tuple[int, ...]
    c: tuple[int, ...]


@dataclass(frozen=True)
class PresMatrix:
    """Columns generating a submodule of the rank-e free module."""

    rank: int
    cols: tuple[tuple[BiPoly, ...], ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for col in self.cols:
            if len(col) != self.rank:
                raise ValueError("column length must equal the rank")
            if not any(col):
                raise ValueError("columns must be nonzero")

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def to_json(self) -> dict:
        """Matrix wire format: entries as lists of [a, b, coefficient] triples."""
        return {
            "rank": self.rank,
            "cols": [[entry.to_triples() for entry in col] for col in self.cols],
        }


def matrix_from_json(obj) -> PresMatrix:
    if not isinstance(obj, dict) or "rank" not in obj or "cols" not in obj:
        raise ValueError('matrix JSON must be an object with "rank" and "cols"')
    rank = obj["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ValueError('"rank" must be a positive integer')
    cols = []
    for col in obj["cols"]:
        if not isinstance(col, list) or len(col) != rank:
            raise ValueError("each column must list one entry per row")
        cols.append(tuple(BiPoly.from_triples(entry) for entry in col))
    return PresMatrix(rank, tuple(cols))


def module_spec(ideal: MonomialIdeal, rank: int) -> ModuleSpec:
    if not ideal.is_m_primary:
        raise NotPrimary("construction needs an m-primary staircase")
    r = ideal.r
    if not 2 <= rank <= r:
        raise RankOutOfRange(f"rank must lie in 2..{r}, got {rank}")
    gens = ideal.gens
    if gens[0].a > gens[-1].b:
        raise NotNormalized(
            "pure x power exceeds pure y power; swap_axes gives the normalized form"
        )
    aprime = tuple(gens[i].a - rank + 1 for i in range(r - rank + 2))
    if aprime[-1] < 0:
        raise NegativeExponent(f"shifted exponent {aprime[-1]} is negative")
    c = tuple(gens[r - rank + 1 + i].b - i for i in range(1, rank))
    return ModuleSpec(ideal, rank, aprime, c)


def build_module(ideal: MonomialIdeal, rank: int) -> PresMatrix:
    """Presentation matrix of the rank-e module attached to a staircase.

    Columns come in three blocks: the staircase block in the first row, the
    two-term band shifting each basis vector into the next, and the pure
    y-power columns closing the band.
    """
    spec = module_spec(ideal, rank)
    e = rank
    gens = ideal.gens
    zero = BiPoly.zero()
    cols: list[tuple[BiPoly, ...]] = []
    for i, ap in enumerate(spec.aprime):
        col = [zero] * e
        col[0] = BiPoly.term(ap, gens[i].b)
        cols.append(tuple(col))
    for i in range(1, e):
        col = [zero] * e
        col[i - 1] = Y
        col[i] = X
        cols.append(tuple(col))
    for i in range(1, e):
        col = [zero] * e
        col[i] = BiPoly.term(0, spec.c[i - 1])
        cols.append(tuple(col))
    return PresMatrix(e, tuple(cols))


def from_ideal(ideal: MonomialIdeal) -> PresMatrix:
    """Rank-one matrix whose columns are the staircase generators."""
    return PresMatrix(1, tuple((BiPoly.term(g.a, g.b),) for g in ideal.gens))


def direct_sum(p1: PresMatrix, p2: PresMatrix) -> PresMatrix:
    """Block-diagonal sum; colengths add and top minors multiply."""
    if p2.rank == 0:
        return p1
    if p1.rank == 0:
        return p2
    zero = BiPoly.zero()
    top = [tuple(col) + (zero,) * p2.rank for col in p1.cols]
    bot = [(zero,) * p1.rank + tuple(col) for col in p2.cols]
    return PresMatrix(p1.rank + p2.rank, tuple(top + bot))


# ---------------------------------------------------------------------------
# minors and Fitting ideals
# ---------------------------------------------------------------------------

def signed_minor_table(mat: PresMatrix, t: int) -> dict[tuple, BiPoly]:
    """All nonzero t-by-t minors keyed by (row tuple, column tuple).

    Enumerates column-to-row assignments depth first, pruning branches where
    the earliest uncovered row has no remaining supporting column, so only
    subsets that can carry a nonzero determinant are visited.  Matrices whose
    entries are all single terms run on plain integer triples.
    """
    e = mat.rank
    if not 1 <= t <= e:
        raise ValueError(f"minor size must lie in 1..{e}")
    if all(entry.num_terms <= 1 for col in mat.cols for entry in col):
        return _minor_table_monomial(mat, t)
    return _minor_table_general(mat, t)


def _minor_table_monomial(mat: PresMatrix, t: int) -> dict[tuple, BiPoly]:
    e = mat.rank
    m = mat.ncols
    colterms = []
    for col in mat.cols:
        terms = []
        for i, entry in enumerate(col):
            if entry:
                a, b, c = entry.single_term()
                terms.append((i, a, b, c))
        colterms.append(terms)
    table: dict[tuple, BiPoly] = {}
    for rows in combinations(range(e), t):
        inset = [False] * e
        for i in rows:
            inset[i] = True
        last = [-1] * e
        for j, terms in enumerate(colterms):
            for i, _a, _b, _c in terms:
                if inset[i]:
                    last[i] = j
        if any(last[i] < 0 for i in rows):
            continue
        used = [False] * e
        chosen_rows: list[int] = []
        chosen_cols: list[int] = []
        acc: dict[tuple, dict] = {}

        def walk(j: int, ca: int, cb: int, cc: int) -> None:
            k = len(chosen_rows)
            if k == t:
                key = tuple(chosen_cols)
                d = acc.get(key)
                if d is None:
                    d = {}
                    acc[key] = d
                mon = (ca, cb)
                nc = d.get(mon, 0) + cc
                if nc:
                    d[mon] = nc
                elif mon in d:
                    del d[mon]
                return
            if m - j < t - k:
                return
            for i in rows:
                if not used[i]:
                    first = i
                    break
            if last[first] < j:
                return
            walk(j + 1, ca, cb, cc)
            for i, a, b, c in colterms[j]:
                if inset[i] and not used[i]:
                    inv = 0
                    for rr in chosen_rows:
                        if rr > i:
                            inv += 1
                    used[i] = True
                    chosen_rows.append(i)
                    chosen_cols.append(j)
                    walk(j + 1, ca + a, cb + b, -cc * c if inv & 1 else cc * c)
                    chosen_cols.pop()
                    chosen_rows.pop()
                    used[i] = False

        walk(0, 0, 0, 1)
        for key, d in acc.items():
            if d:
                table[(rows, key)] = BiPoly(d)
    return table


def _minor_table_general(mat: PresMatrix, t: int) -> dict[tuple, BiPoly]:
    e = mat.rank
    m = mat.ncols
    support = [tuple(i for i, entry in enumerate(col) if entry) for col in mat.cols]
    table: dict[tuple, BiPoly] = {}

    for rows in combinations(range(e), t):
        rowset = frozenset(rows)
        last: dict[int, int] = {}
        for j, sup in enumerate(support):
            for i in sup:
                if i in rowset:
                    last[i] = j
        if len(last) < t:
            continue
        used = [False] * e
        chosen_cols: list[int] = []
        chosen_rows: list[int] = []

        def walk(j: int, prod: BiPoly, sign: int) -> None:
            k = len(chosen_rows)
            if k == t:
                key = (rows, tuple(chosen_cols))
                piece = prod if sign > 0 else -prod
                acc = table.get(key)
                table[key] = piece if acc is None else acc + piece
                return
            if m - j < t - k:
                return
            first = next(i for i in rows if not used[i])
            if last[first] < j:
                return
            walk(j + 1, prod, sign)
            for i in support[j]:
                if i not in rowset or used[i]:
                    continue
                inv = sum(1 for rr in chosen_rows if rr > i)
                used[i] = True
                chosen_rows.append(i)
                chosen_cols.append(j)
                walk(j + 1, prod * mat.cols[j][i], sign * (-1) ** inv)
                chosen_cols.pop()
                chosen_rows.pop()
                used[i] = False

        walk(0, BiPoly.one(), 1)

    return {key: det for key, det in table.items() if det}


def minors(mat: PresMatrix, t: int) -> list[BiPoly]:
    """All t-by-t minors over all row and column subsets, duplicates retained."""
    table = signed_minor_table(mat, t)
    zero = BiPoly.zero()
    out = []
    for rows in combinations(range(mat.rank), t):
        for cols in combinations(range(mat.ncols), t):
            out.append(table.get((rows, cols), zero))
    return out


def fitting_ideal(mat: PresMatrix, t: int) -> MonomialIdeal:
    """Certified monomial ideal of t-minors.

    The candidate is generated by the single-term minors (signs dropped); the
    certificate checks that every term of every minor is divisible by some
    candidate generator.  Refuses with NonMonomialIdeal otherwise, so callers
    never reason about an uncertified monomial structure.
    """
    dets = list(signed_minor_table(mat, t).values())
    singles = []
    for det in dets:
        if det.num_terms == 1:
            a, b, _c = det.single_term()
            singles.append((a, b))
    if not singles:
        raise NonMonomialIdeal(f"no single-term {t}-minors to generate from")
    ideal = canonicalize(singles)
    for det in dets:
        for mon, _c in det.items():
            if not ideal.contains(mon):
                raise NonMonomialIdeal(
                    f"minor term x^{mon.a} y^{mon.b} is not reducible by the candidate ideal"
                )
    return ideal


def closed_form_fitting(ideal: MonomialIdeal, rank: int) -> MonomialIdeal:
    """Monomial ideal the maximal minors must generate, from the shifted data."""
    spec = module_spec(ideal, rank)
    gens = list(ideal.gens[: ideal.r - rank + 2])
    for i in range(1, rank):
        gens.append(Monomial(rank - 1 - i, spec.c[i - 1] + i))
    return canonicalize(gens)


# ---------------------------------------------------------------------------
# truncated linear algebra with Nakayama certificates
# ---------------------------------------------------------------------------

def _column_terms(mat: PresMatrix) -> list[tuple[list[tuple[int, int, int, int]], int]]:
    cols = []
    for col in mat.cols:
        terms = []
        for k, entry in enumerate(col):
            for mon, c in entry.items():
                terms.append((k, mon.a, mon.b, c))
        cols.append((terms, min(a + b for _k, a, b, _c in terms)))
    return cols


def _graph_mode(cols) -> bool:
    for terms, _o in cols:
        if len(terms) > 2:
            return False
        if len(terms) == 2 and abs(terms[0][3]) != abs(terms[1][3]):
            return False
    return True


def _start_level(cols) -> int:
    return max(a + b for terms, _o in cols for _k, a, b, _c in terms) + 2


def _fill_span(span, cols, e: int, level: int, min_deg: int) -> None:
    block = tri(level)
    for terms, ordj in cols:
        for d in range(min_deg, level - ordj):
            for alpha in range(d + 1):
                beta = d - alpha
                row = []
                for k, a, b, c in terms:
                    xa = a + alpha
                    yb = b + beta
                    dd = xa + yb
                    if dd < level:
                        row.append((k * block + tri(dd) + yb, c))
                if row:
                    span.add(row)


def _make_span(graph: bool, size: int):
    return GraphSpan(size) if graph else PivotSpan(size)


def _tail_certified(span, e: int, level: int, deg: int) -> bool:
    # every basis vector of total degree `deg` must lie in the span at `level`
    block = tri(level)
    base = tri(deg)
    for k in range(e):
        off = k * block + base
        for y in range(deg + 1):
            if not span.contains_single(off + y):
                return False
    return True


def _colength_engine(mat: PresMatrix, cap: int, abort_above: int | None = None,
                     start: int | None = None) -> tuple[int, int]:
    """Certified colength and the truncation level that certified it.

    The certificate is sound at any level, so callers may pass a start level
    below the default (largest entry degree plus two); failed levels are
    cheap because the spans are small.
    """
    cols = _column_terms(mat)
    graph = _graph_mode(cols)
    e = mat.rank
    level = _start_level(cols) if start is None else max(2, start)
    while level <= cap:
        span = _make_span(graph, e * tri(level + 1))
        _fill_span(span, cols, e, level + 1, 0)
        deficiency = e * tri(level + 1) - span.rank
        if abort_above is not None and deficiency > abort_above:
            raise _AbortColength(deficiency)
        if _tail_certified(span, e, level + 1, level):
            return deficiency, level
        level += 2
    raise NotFiniteColength(f"certificate failed at all truncation levels up to {cap}")


def colength_module(mat: PresMatrix, cap: int = 64) -> int:
    """Length of the free quotient, certified by the Nakayama stopping rule.

    Works at truncation level N: the deficiency of the span of all monomial
    multiples of the columns equals the colength once every degree-N basis
    vector lies in the span computed at level N+1.  N starts two past the
    largest entry degree and steps by two until the certificate passes.
    """
    return _colength_engine(mat, cap)[0]


def mu_module(mat: PresMatrix, cap: int = 64) -> int:
    """Minimal number of generators, as a certified truncated rank difference.

    The difference between the span of all column multiples and the span of
    the positive-degree multiples is a lower bound at every truncation level;
    it is exact as soon as it reaches the column count, and otherwise once the
    Nakayama certificate covers the previous degree.
    """
    cols = _column_terms(mat)
    graph = _graph_mode(cols)
    e = mat.rank
    level = _start_level(cols)
    while level <= cap:
        block = tri(level)
        span = _make_span(graph, e * block)
        _fill_span(span, cols, e, level, 1)
        gained = 0
        for terms, _o in cols:
            row = []
            for k, a, b, c in terms:
                if a + b < level:
                    row.append((k * block + tri(a + b) + b, c))
            if row and span.add(row):
                gained += 1
        if gained == mat.ncols:
            return gained
        # span now holds all multiples of degree >= 0 at this level
        if _tail_certified(span, e, level, level - 1):
            return gained
        level += 2
    raise NotFiniteColength(
        f"generator count did not stabilize at truncation levels up to {cap}"
    )
