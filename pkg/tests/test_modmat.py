import pytest

import icmod as ic
from icmod.algebra import BiPoly, X, Y
from icmod.modmat import (
    NonMonomialIdeal,
    NotFiniteColength,
    NotNormalized,
    PresMatrix,
    RankOutOfRange,
)

from conftest import lattice_colength, permutation_det


def entries_row1(mat):
    return [col[0] for col in mat.cols]


def test_build_structure_showcase_a(showcase_a):
    mat = ic.build_module(showcase_a, 4)
    assert mat.rank == 4 and mat.ncols == 9
    f_exps = [col[0].single_term()[:2] for col in mat.cols[:3]]
    assert f_exps == [(4, 0), (1, 1), (0, 2)]
    h_exps = [col[i + 1].single_term()[:2] for i, col in enumerate(mat.cols[6:])]
    assert h_exps == [(0, 3), (0, 3), (0, 6)]


def test_build_structure_showcase_b(showcase_b):
    mat = ic.build_module(showcase_b, 5)
    assert mat.ncols == 10
    h_exps = [col[i + 1].single_term()[:2] for i, col in enumerate(mat.cols[6:])]
    assert h_exps == [(0, 2), (0, 2), (0, 3), (0, 5)]


def test_build_errors(showcase_a):
    with pytest.raises(RankOutOfRange):
        ic.build_module(showcase_a, 6)
    with pytest.raises(RankOutOfRange):
        ic.build_module(showcase_a, 1)
    with pytest.raises(NotNormalized):
        ic.build_module(showcase_a.swap_axes(), 2)
    with pytest.raises(RankOutOfRange):
        ic.build_module(ic.maximal_ideal(), 2)


def test_module_spec_invariants(showcase_b):
    spec = ic.module_spec(showcase_b, 4)
    assert list(spec.aprime) == sorted(spec.aprime, reverse=True)
    assert spec.aprime[-1] >= 0
    assert list(spec.c) == sorted(spec.c)
    assert spec.c[0] >= showcase_b.gens[showcase_b.r - 4 + 1].b


def test_minors_counts_and_band_recursion(showcase_a):
    mat = ic.build_module(showcase_a, 4)
    assert len(ic.minors(mat, 4)) == 126
    ones = ic.minors(ic.build_module(showcase_a, 2), 1)
    nonzero = [p for p in ones if p]
    entries = [e for col in ic.build_module(showcase_a, 2).cols for e in col if e]
    assert sorted(str(p) for p in nonzero) == sorted(str(e) for e in entries)

    # 2x4 band with unit y-powers: top minors generate the maximal ideal squared
    band = PresMatrix(2, ((X, BiPoly.zero()), (Y, X), (Y, BiPoly.zero()),
                          (BiPoly.zero(), Y)))
    assert ic.fitting_ideal(band, 2) == ic.maximal_ideal_power(2)


def test_minor_table_against_permutation_expansion(showcase_a):
    from itertools import combinations

    mat = ic.build_module(showcase_a, 3)
    table = ic.signed_minor_table(mat, 3)
    rows = (0, 1, 2)
    for cs in combinations(range(mat.ncols), 3):
        entries = [[mat.cols[j][i] for j in cs] for i in range(3)]
        expected = permutation_det(entries)
        assert table.get((rows, cs), BiPoly.zero()) == expected


def test_fitting_ideal_examples(showcase_a):
    mat = ic.build_module(showcase_a, 4)
    assert ic.fitting_ideal(mat, 4) == showcase_a
    assert ic.fitting_ideal(mat, 3) == ic.maximal_ideal_power(3)
    diag = PresMatrix(2, ((BiPoly.term(2, 0), BiPoly.zero()),
                          (BiPoly.zero(), BiPoly.term(0, 3))))
    assert ic.fitting_ideal(diag, 2).to_pairs() == [[2, 3]]


def test_fitting_ideal_refuses_non_monomial():
    mixed = PresMatrix(1, ((X + Y,), (BiPoly.term(0, 2),)))
    with pytest.raises(NonMonomialIdeal):
        ic.fitting_ideal(mixed, 1)


def test_closed_form_examples(showcase_a, remark_counterexample):
    assert ic.closed_form_fitting(showcase_a, 4) == showcase_a
    widened = ic.canonicalize([(5, 0), (4, 1), (3, 2), (2, 3), (0, 5)])
    assert ic.closed_form_fitting(widened, 3).to_pairs() == [
        [5, 0], [4, 1], [3, 2], [1, 3], [0, 5]]
    fit = ic.closed_form_fitting(remark_counterexample, 4)
    closure = fit.integral_closure()
    assert closure.contains((4, 1)) and not fit.contains((4, 1))


def test_mu_module_examples(showcase_a, showcase_b):
    assert ic.mu_module(ic.build_module(showcase_a, 4)) == 9
    assert ic.mu_module(ic.build_module(showcase_b, 5)) == 10
    single = PresMatrix(1, ((X,),))
    assert ic.mu_module(single) == 1
    dup = PresMatrix(1, ((X,), (X,), (BiPoly.term(0, 1),)))
    assert ic.mu_module(dup) == 2


def test_colength_module_examples(showcase_a):
    assert ic.colength_module(ic.from_ideal(showcase_a)) == 23
    assert ic.colength_module(ic.build_module(showcase_a, 4)) == 17
    with pytest.raises(NotFiniteColength):
        ic.colength_module(PresMatrix(1, ((X,),)), cap=20)


def test_direct_sum(showcase_a):
    m1 = ic.from_ideal(ic.maximal_ideal())
    both = ic.direct_sum(m1, m1)
    assert both.rank == 2
    assert ic.colength_module(both) == 2
    assert ic.fitting_ideal(both, 2) == ic.maximal_ideal_power(2)

    mixed = ic.direct_sum(ic.from_ideal(showcase_a), m1)
    assert ic.fitting_ideal(mixed, 2) == showcase_a * ic.maximal_ideal()

    empty = PresMatrix(0, ())
    assert ic.direct_sum(m1, empty) == m1


def test_matrix_json_roundtrip(showcase_b):
    mat = ic.build_module(showcase_b, 3)
    again = ic.matrix_from_json(mat.to_json())
    assert again == mat
    with pytest.raises(ValueError):
        ic.matrix_from_json({"rank": 2})
    with pytest.raises(ValueError):
        ic.matrix_from_json({"rank": 2, "cols": [[[[0, 0, 1]]]]})


# ---------------------------------------------------------------------------
# desk-scale sweeps (small boxes; the exhaustive boxes live in the acceptance suite)
# ---------------------------------------------------------------------------

def _sweep_pairs(box):
    for ideal in ic.enumerate_staircases(box, box, min_r=2, star_only=True):
        for e in range(2, ideal.r + 1):
            yield ideal, e


def test_minor_fitting_matches_closed_form_small_box():
    for ideal, e in _sweep_pairs(6):
        mat = ic.build_module(ideal, e)
        fit = ic.fitting_ideal(mat, e)
        assert fit == ic.closed_form_fitting(ideal, e)
        assert fit.contains_ideal(ideal)
        assert fit.mu() == ideal.r + 1
        assert ic.fitting_ideal(mat, e - 1) == ic.maximal_ideal_power(e - 1)


def test_generator_count_small_box():
    for ideal, e in _sweep_pairs(6):
        assert ic.mu_module(ic.build_module(ideal, e)) == ideal.r + e


def test_contractedness_chain_small_box():
    # numeric contractedness propagates from the ideal to the minor ideal,
    # and for the module it is equivalent to the minor-ideal statement
    for ideal, e in _sweep_pairs(5):
        mat = ic.build_module(ideal, e)
        fit = ic.closed_form_fitting(ideal, e)
        if ideal.is_contracted_numeric():
            assert fit.is_contracted_numeric()
        assert fit.is_contracted_numeric() == (
            ic.mu_module(mat) == fit.order() + e)


def test_complete_with_tight_corner_reproduces_input():
    for ideal, e in _sweep_pairs(6):
        if ideal.is_complete() and ideal.gens[ideal.r - e + 2].a == e - 2:
            assert ic.closed_form_fitting(ideal, e) == ideal


def test_rank_one_engine_equals_lattice_count_small_box():
    for ideal in ic.enumerate_staircases(6, 6, min_r=1):
        assert ic.colength_module(ic.from_ideal(ideal)) == lattice_colength(ideal)
