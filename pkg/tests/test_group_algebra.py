import numpy as np
import pytest

from iwahori_gr.errors import GroupTooLarge, PrecisionExceeded
from iwahori_gr.group_algebra_filtration import (
    FiniteQuotientGroup,
    GroupAlgebraElement,
    augmentation_powers,
    compare_filtrations,
    coroot_commutator_matrix_identity,
    cyclic_group,
    depth_membership_suite,
    elementary_abelian,
    group_ring_congruence_suite,
    group_unit,
    heisenberg_group,
    iwahori_quotient,
    omega_monomial_filtration,
    quotient_dimensions,
    shifted_unit,
    shrink_to_budget,
)
from iwahori_gr.iwahori_group import Grade
from iwahori_gr.padic_ring import ring_make
from iwahori_gr.root_system import build_cached


def poly_quotient_dims_oracle(p, factors):
    """Coefficients of prod (1-t^p)/(1-t) per factor, by brute polynomial
    multiplication."""
    poly = [1]
    block = [1] * p
    for _ in range(factors):
        out = [0] * (len(poly) + len(block) - 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(block):
                out[i + j] += a * b
        poly = out
    return poly


def test_cyclic_group_dims_match_closed_form():
    G = cyclic_group(5)
    lad = augmentation_powers(G, 6)
    assert quotient_dimensions(lad) == poly_quotient_dims_oracle(5, 1) + [0]


def test_elementary_abelian_truncated_pascal():
    G = elementary_abelian(5, 2)
    lad = augmentation_powers(G, 10)
    oracle = poly_quotient_dims_oracle(5, 2)
    assert quotient_dimensions(lad) == oracle + [0] * (10 - len(oracle))
    assert sum(quotient_dimensions(lad)) == len(G)


def test_trivial_group_has_zero_ideal():
    G = elementary_abelian(5, 0)
    lad = augmentation_powers(G, 3)
    assert lad.dim(1) == 0 and lad.dim(2) == 0


def test_cyclic_p_squared_single_variable():
    G = cyclic_group(5, 2)
    lad = augmentation_powers(G, 26)
    dims = quotient_dimensions(lad)
    # one truncated polynomial variable of nilpotency degree 25
    assert dims == [1] * 25 + [0]


def test_dimension_conservation_heisenberg():
    G = heisenberg_group(5)
    lad = augmentation_powers(G, 18)
    dims = quotient_dimensions(lad)
    assert lad.dim(17) == 0
    assert sum(dims) == len(G)


def test_ladder_multiplicativity_heisenberg():
    G = heisenberg_group(5)
    lad = augmentation_powers(G, 8)
    rng = np.random.default_rng(0)
    for _ in range(30):
        a = int(rng.integers(2, 5))
        b = int(rng.integers(1, 4))
        if a + b > 8:
            continue
        ra = lad.levels[a].rows
        rb = lad.levels[b].rows
        if not len(ra) or not len(rb):
            continue
        x = GroupAlgebraElement(
            G, {i: int(c) for i, c in enumerate(ra[int(rng.integers(len(ra)))]) if c}
        )
        y = GroupAlgebraElement(
            G, {i: int(c) for i, c in enumerate(rb[int(rng.integers(len(rb)))]) if c}
        )
        assert lad.member((x * y).vector(), a + b)


def test_congruence_suite_heisenberg():
    rep = group_ring_congruence_suite(heisenberg_group(5), samples=200, seed=0)
    assert rep["checked"]["p-power"] == 200
    assert rep["checked"]["commutator"] == 400


def test_group_cap_enforced(monkeypatch):
    monkeypatch.setenv("IWAHORI_GR_GROUP_CAP", "100")
    with pytest.raises(GroupTooLarge):
        iwahori_quotient(build_cached("A", 1), ring_make(5, 1, 2))
    with pytest.raises(GroupTooLarge):
        augmentation_powers(heisenberg_group(5), 3)


@pytest.fixture(scope="module")
def a1_image():
    return iwahori_quotient(build_cached("A", 1), ring_make(5, 1, 2))


def test_a1_image_structure(a1_image):
    G = a1_image
    assert len(G) == 625
    # ordered basis: two rank-one coordinates at the half grade, torus at one
    weights = sorted(w for _, w in G.basis)
    assert weights == [1, 1, 2] and G.h == 2
    assert sorted(G.meta["basis_orders"]) == [5, 5, 25]
    lad = augmentation_powers(G, 2)
    assert lad.dim(1) - lad.dim(2) == 2


def test_a1_monomial_ladder_first_step_is_augmentation(a1_image):
    mono = omega_monomial_filtration(a1_image, 3)
    assert mono.dim(1) == len(a1_image) - 1


def test_a1_compare_filtrations_equality(a1_image):
    rep = compare_filtrations(a1_image)
    ks = [lvl["k_num"] for lvl in rep["levels"]]
    assert ks == [1, 2, 3]
    assert rep["all_equal"]
    with pytest.raises(PrecisionExceeded):
        compare_filtrations(a1_image, k_max_num=40)


def test_a1_congruence_suite(a1_image):
    rep = group_ring_congruence_suite(a1_image, samples=100, seed=1)
    assert rep["checked"]["p-power"] == 100


def test_a1_membership_suite(a1_image):
    rep = depth_membership_suite(a1_image)
    assert rep["passed"] == 3 and rep["vacuous"] == 0


def test_reductive_witness_separates():
    G = shrink_to_budget(build_cached("A", 1), ring_make(5, 1, 2), d_Z=1, budget=5**4)
    rep = compare_filtrations(G)
    assert not rep["all_equal"]
    w = rep["central_witness"]
    assert w["in_m"] and not w["in_m_squared"] and w["separates"]


def test_a2_quotient_memberships():
    rs = build_cached("A", 2)
    spec = ring_make(5, 1, 2)
    G = iwahori_quotient(rs, spec, cut=Grade(2, 3), kill_central=((0, -1), (-1, 0)))
    assert len(G) == 625
    rep = depth_membership_suite(G)
    # the two killed coordinates and the torus line are vacuous here
    assert rep["passed"] == 4
    labels = {c["what"]: c["status"] for c in rep["checks"]}
    assert labels["u[[1, 1]](p^delta xi^0) in m^2"] == "pass"


def test_a2_compare_small_quotient():
    rs = build_cached("A", 2)
    spec = ring_make(5, 1, 2)
    G = iwahori_quotient(rs, spec, cut=Grade(2, 3), kill_central=((0, -1), (-1, 0)))
    rep = compare_filtrations(G)
    assert rep["all_equal"]
    assert [lvl["k_num"] for lvl in rep["levels"]] == [1, 2]


def test_shrink_to_budget_paths():
    rs1 = build_cached("A", 1)
    spec = ring_make(5, 1, 2)
    G = shrink_to_budget(rs1, spec, budget=5**4)
    assert len(G) == 625 and G.meta["cut"] is None
    rs2 = build_cached("A", 2)
    G2 = shrink_to_budget(rs2, spec, budget=5**4)
    assert len(G2) <= 5**4 and G2.meta["cut"] is not None


def test_matrix_identity_for_twists():
    assert coroot_commutator_matrix_identity(ring_make(5, 1, 3), 0)
    spec = ring_make(5, 2, 3)
    assert coroot_commutator_matrix_identity(spec, 0)
    assert coroot_commutator_matrix_identity(spec, 1)
    assert coroot_commutator_matrix_identity(ring_make(7, 1, 2), 0)


def test_group_algebra_element_arithmetic():
    G = heisenberg_group(5)
    a = group_unit(G, 3)
    b = group_unit(G, 17)
    prod = a * b
    assert list(prod.terms.values()) == [1]
    assert (shifted_unit(G, 3) + shifted_unit(G, 3).scale(4)).is_zero()


def test_monomial_membership_in_adic_power(a1_image):
    # each ordered-basis monomial lies in the adic power scaled by its weight
    G = a1_image
    lad = augmentation_powers(G, 4)
    x0, w0 = G.basis[0][0], G.basis[0][1]
    x2, w2 = G.basis[2][0], G.basis[2][1]
    v = (shifted_unit(G, x0) * shifted_unit(G, x2)).vector()
    assert lad.member(v, min(4, G.h * (w0 + w2) // G.h))
    assert lad.member(shifted_unit(G, x2).vector(), w2)
