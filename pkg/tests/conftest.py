"""Shared fixtures and independent brute-force oracles for the test suite.

The oracles deliberately avoid the library's own algorithms: colengths come
from lattice scans, hull vertices from pairwise domination tests over exact
fractions, and determinants from permutation expansion.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest

import icmod as ic


def lattice_colength(ideal: ic.MonomialIdeal) -> int:
    """Count lattice points outside the staircase by brute scan."""
    a0 = ideal.gens[0].a
    br = ideal.gens[-1].b
    count = 0
    for a in range(a0 + 1):
        for b in range(br + 1):
            if not ideal.contains((a, b)):
                count += 1
    return count


def _dominated_by_segment(p, q1, q2) -> bool:
    """Is p componentwise above some convex combination of q1 and q2?"""
    lo, hi = Fraction(0), Fraction(1)
    for k in (0, 1):
        d = q1[k] - q2[k]
        rhs = p[k] - q2[k]
        if d == 0:
            if rhs < 0:
                return False
        elif d > 0:
            hi = min(hi, Fraction(rhs, d))
        else:
            lo = max(lo, Fraction(rhs, d))
    return lo <= hi


def in_newton_polyhedron(p, points) -> bool:
    """Exact membership of p in the hull of points plus the positive quadrant."""
    pts = list(points)
    for q1 in pts:
        for q2 in pts:
            if _dominated_by_segment(p, q1, q2):
                return True
    return False


def brute_hull_vertices(points) -> list[tuple[int, int]]:
    """Vertices as points not dominated by the polyhedron of the others."""
    pts = [tuple(p) for p in points]
    verts = [p for p in pts if not in_newton_polyhedron(p, [q for q in pts if q != p])]
    return sorted(verts, key=lambda v: (-v[0], v[1]))


def brute_closure(ideal: ic.MonomialIdeal) -> ic.MonomialIdeal:
    """Integral closure by scanning every lattice point against the polyhedron."""
    pts = [tuple(g) for g in ideal.gens]
    a0 = ideal.gens[0].a
    br = ideal.gens[-1].b
    members = []
    for a in range(a0 + 1):
        for b in range(br + 1):
            if in_newton_polyhedron((a, b), pts):
                members.append((a, b))
    return ic.canonicalize(members)


def permutation_det(entries) -> ic.BiPoly:
    """Determinant of a small square matrix of polynomials, by full expansion."""
    n = len(entries)
    total = ic.BiPoly.zero()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = ic.BiPoly.one()
        for i in range(n):
            prod = prod * entries[i][perm[i]]
        total = total + (prod if sign > 0 else -prod)
    return total


@pytest.fixture(scope="session")
def example_reference():
    """The complete order-8-by-8 reference ideal with four hull vertices."""
    return ic.canonicalize([(8, 0), (6, 1), (3, 2), (2, 3), (1, 4), (0, 8)])


@pytest.fixture(scope="session")
def showcase_a():
    """Complete ideal of order 5 whose top-rank module is decomposable."""
    return ic.canonicalize([(7, 0), (4, 1), (3, 2), (2, 4), (1, 5), (0, 9)])


@pytest.fixture(scope="session")
def showcase_b():
    """Complete ideal of order 5 whose modules are indecomposable up to rank 5."""
    return ic.canonicalize([(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 9)])


@pytest.fixture(scope="session")
def chain_ideal():
    """Product of the ideals (x, y^i) for i = 1..4; order 4, five generators."""
    acc = ic.canonicalize([(1, 0), (0, 1)])
    for i in range(2, 5):
        acc = acc * ic.canonicalize([(1, 0), (0, i)])
    return acc


@pytest.fixture(scope="session")
def remark_counterexample():
    """Complete ideal whose rank-4 module fails to be integrally closed."""
    return ic.canonicalize([(1, 0), (0, 3)]) * ic.simple_closure(5, 3)
