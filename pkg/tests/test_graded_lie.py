import itertools
import random

import pytest

from iwahori_gr.errors import InadmissiblePrime, Mismatch, MixedReduction, ReducedInput
from iwahori_gr.graded_lie import (
    BasisSymbol,
    GradedLieAlgebra,
    certify_brackets_against_oracle,
)
from iwahori_gr.padic_ring import ring_make, xi_power_coeffs
from iwahori_gr.root_system import build_cached


@pytest.fixture(scope="module")
def alg_a2():
    return GradedLieAlgebra(build_cached("A", 2), ring_make(5, 1, 2))


@pytest.fixture(scope="module")
def alg_a1_f2():
    return GradedLieAlgebra(build_cached("A", 1), ring_make(5, 2, 2))


def sym(root, depth=0, twist=0):
    return BasisSymbol("root", root, depth, twist)


def tsym(lam, depth=1, twist=0):
    return BasisSymbol("torus", lam, depth, twist)


def test_reduced_basis_counts(alg_a2, alg_a1_f2):
    assert len(alg_a2.basis(reduced=True)) == 8
    assert len(alg_a1_f2.basis(reduced=True)) == 6
    alg_red = GradedLieAlgebra(build_cached("A", 1), ring_make(5, 1, 2), d_Z=1)
    assert len(alg_red.basis(reduced=True)) == 2 + 1 + 1


def test_reduced_grades_land_in_unit_interval(alg_a2, alg_a1_f2):
    for alg in (alg_a2, alg_a1_f2):
        for s in alg.basis(reduced=True):
            assert 1 <= alg.grade_num(s) <= alg.h


def test_admissibility_enforced():
    with pytest.raises(InadmissiblePrime):
        GradedLieAlgebra(build_cached("A", 2), ring_make(3, 1, 2))


def test_bracket_positive_pair(alg_a2):
    out = alg_a2.bracket(
        alg_a2.element({sym((1, 0)): 1}), alg_a2.element({sym((0, 1)): 1})
    )
    c = alg_a2.sc.n11[((1, 0), (0, 1))] % 5
    assert out.terms == {sym((1, 1)): c}


def test_bracket_negative_pair_vanishes_reduced(alg_a2):
    out = alg_a2.bracket(
        alg_a2.element({sym((-1, 0)): 1}), alg_a2.element({sym((0, -1)): 1})
    )
    assert out.is_zero()


def test_bracket_opposite_roots_gives_torus(alg_a2):
    out = alg_a2.bracket(
        alg_a2.element({sym((1, 0)): 1}), alg_a2.element({sym((-1, 0)): 1})
    )
    assert out.terms == {tsym(("coroot", 0)): 1}
    # antisymmetry
    out2 = alg_a2.bracket(
        alg_a2.element({sym((-1, 0)): 1}), alg_a2.element({sym((1, 0)): 1})
    )
    assert out2 == out.scale(-1)


def test_long_coroot_expands_in_simple_coroots(alg_a2):
    out = alg_a2.bracket(
        alg_a2.element({sym((1, 1)): 1}), alg_a2.element({sym((-1, -1)): 1})
    )
    assert out.terms == {tsym(("coroot", 0)): 1, tsym(("coroot", 1)): 1}


def test_torus_symbols_central_in_reduced(alg_a2):
    basis = alg_a2.basis(reduced=True)
    for s in basis:
        if s.kind != "torus":
            continue
        for s2 in basis:
            assert alg_a2.bracket(
                alg_a2.element({s: 1}), alg_a2.element({s2: 1})
            ).is_zero()


def test_mixed_reduction_rejected(alg_a2):
    x = alg_a2.element({sym((1, 0)): 1}, reduced=True)
    y = alg_a2.element({sym((0, 1)): 1}, reduced=False)
    with pytest.raises(MixedReduction):
        alg_a2.bracket(x, y)


def test_twist_expansion_matches_modulus(alg_a1_f2):
    # [xi]^1 * [xi]^1 re-expands through the quadratic modulus
    spec = alg_a1_f2.spec
    out = alg_a1_f2.bracket(
        alg_a1_f2.element({sym((1,), 0, 1): 1}),
        alg_a1_f2.element({sym((-1,), 0, 1): 1}),
    )
    coeffs = xi_power_coeffs(spec.p, spec.f, spec.modulus, 2)
    expect = {
        tsym(("coroot", 0), 1, t): c % 5 for t, c in enumerate(coeffs) if c % 5
    }
    assert out.terms == expect


@pytest.mark.parametrize(
    "t,n,p,f",
    [("A", 2, 5, 1), ("A", 1, 5, 2), ("B", 2, 7, 1), ("G", 2, 11, 1)],
)
def test_antisymmetry_and_jacobi_exhaustive(t, n, p, f):
    alg = GradedLieAlgebra(build_cached(t, n), ring_make(p, f, 2))
    basis = alg.basis(reduced=True)
    elems = {s: alg.element({s: 1}) for s in basis}
    for s1, s2 in itertools.product(basis, repeat=2):
        assert alg.bracket(elems[s1], elems[s2]) == alg.bracket(
            elems[s2], elems[s1]
        ).scale(-1)
    for s1, s2, s3 in itertools.combinations(basis, 3):
        total = (
            alg.bracket(elems[s1], alg.bracket(elems[s2], elems[s3]))
            + alg.bracket(elems[s2], alg.bracket(elems[s3], elems[s1]))
            + alg.bracket(elems[s3], alg.bracket(elems[s1], elems[s2]))
        )
        assert total.is_zero(), (s1, s2, s3)


def test_bracket_is_graded(alg_a2):
    rng = random.Random(2)
    basis = alg_a2.basis(reduced=True)
    for _ in range(100):
        s1, s2 = rng.choice(basis), rng.choice(basis)
        out = alg_a2.bracket(alg_a2.element({s1: 1}), alg_a2.element({s2: 1}))
        if out.is_zero():
            continue
        grades = {alg_a2.grade_num(s) for s in out.terms}
        assert grades == {alg_a2.grade_num(s1) + alg_a2.grade_num(s2)}


def test_twist_zero_span_is_subalgebra(alg_a1_f2):
    basis0 = [s for s in alg_a1_f2.basis(reduced=True) if s.twist == 0]
    assert len(basis0) * alg_a1_f2.spec.f == len(alg_a1_f2.basis(reduced=True))
    for s1, s2 in itertools.product(basis0, repeat=2):
        out = alg_a1_f2.bracket(
            alg_a1_f2.element({s1: 1}), alg_a1_f2.element({s2: 1})
        )
        assert all(s.twist == 0 for s in out.terms)


def test_shift_operator(alg_a2):
    alg = GradedLieAlgebra(build_cached("A", 2), ring_make(5, 1, 3))
    x = alg.element({sym((1, 0), 0, 0): 1}, reduced=False)
    shifted = alg.p_operator(x)
    assert shifted.terms == {sym((1, 0), 1, 0): 1}
    t = alg.element({tsym(("coroot", 1), 1, 0): 1}, reduced=False)
    assert alg.p_operator(t).terms == {tsym(("coroot", 1), 2, 0): 1}
    with pytest.raises(ReducedInput):
        alg.p_operator(alg.element({sym((1, 0)): 1}, reduced=True))


def test_unreduced_slices_are_shift_images(alg_a2):
    alg = GradedLieAlgebra(build_cached("A", 2), ring_make(5, 1, 3))
    bound = 3 * alg.h
    symbols = alg.basis(reduced=False, max_grade_num=bound)
    by_grade = {}
    for s in symbols:
        by_grade.setdefault(alg.grade_num(s), set()).add(s)
    for g, slice_syms in by_grade.items():
        if g <= alg.h:
            continue
        prev = by_grade.get(g - alg.h, set())
        assert {s.shifted() for s in prev} == slice_syms


@pytest.mark.parametrize(
    "t,n,p,f,rank_one",
    [("A", 1, 5, 1, False), ("A", 2, 5, 1, False), ("A", 1, 5, 2, False),
     ("C", 2, 7, 1, True), ("G", 2, 11, 1, True)],
)
def test_oracle_agreement(t, n, p, f, rank_one):
    alg = GradedLieAlgebra(build_cached(t, n), ring_make(p, f, 3))
    rep = certify_brackets_against_oracle(alg, samples=60, seed=1, rank_one=rank_one)
    assert rep["checked"] == 60


def test_oracle_detects_corrupted_constants():
    alg = GradedLieAlgebra(build_cached("A", 2), ring_make(5, 1, 3))
    a, b = (1, 0), (0, 1)
    alg.sc = type(alg.sc)(
        alg.sc.rs,
        {**alg.sc.n11, (a, b): 2, (b, a): -2},
        alg.sc.extraspecial,
    )
    with pytest.raises(Mismatch):
        certify_brackets_against_oracle(alg, samples=200, seed=1)


def test_graded_image_reads_coordinates():
    rs = build_cached("A", 2)
    spec = ring_make(5, 1, 3)
    alg = GradedLieAlgebra(rs, spec)
    from iwahori_gr.iwahori_group import Grade, unipotent_element

    e = unipotent_element(rs, spec, (1, 0), spec.from_int(2 * 5))
    grade, im = alg.graded_image(e)
    assert grade == Grade(alg.h + 1, alg.h)
    assert im.terms == {sym((1, 0), 1, 0): 2}
