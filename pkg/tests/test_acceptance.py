"""Acceptance suite: one test per criterion, each printing a pass line with
its runtime and asserting the stated budget."""

import time

import pytest

from iwahori_gr.chevalley import certify_constants, compute_constants
from iwahori_gr.cli_verify import gk_bounds, main
from iwahori_gr.enveloping import EnvelopingAlgebra
from iwahori_gr.graded_lie import GradedLieAlgebra, certify_brackets_against_oracle
from iwahori_gr.group_algebra_filtration import (
    augmentation_powers,
    compare_filtrations,
    coroot_commutator_matrix_identity,
    cyclic_group,
    depth_membership_suite,
    elementary_abelian,
    group_ring_congruence_suite,
    heisenberg_group,
    iwahori_quotient,
    quotient_dimensions,
    shrink_to_budget,
)
from iwahori_gr.iwahori_group import Grade, check_p_valuation_axioms
from iwahori_gr.padic_ring import ring_make
from iwahori_gr.root_system import build_cached


class Criterion:
    def __init__(self, number, label, budget):
        self.number = number
        self.label = label
        self.budget = budget

    def __enter__(self):
        self.t0 = time.time()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.time() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"[criterion {self.number:2d}] {status} {self.label} ({elapsed:.1f}s)")
        if exc_type is None:
            assert elapsed < self.budget, (
                f"criterion {self.number} exceeded its {self.budget}s budget "
                f"({elapsed:.1f}s)"
            )
        return False


CONSTANT_TYPES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("C", 2),
    ("B", 3), ("C", 3), ("D", 4), ("G", 2),
]


def test_criterion_1_structure_constants():
    with Criterion(1, "structure constants certified on all listed types", 30):
        for t, n in CONSTANT_TYPES:
            sc = compute_constants(build_cached(t, n))
            report = certify_constants(sc)
            assert report["jacobi_triples"] > 0
            if t == "A" and n >= 2:
                assert report["matrix_model"] == "elementary"
                assert report["matrix_pairs_checked"] > 0
            if (t, n) == ("C", 2):
                assert report["matrix_model"] == "symplectic"


def test_criterion_2_valuation_axioms():
    with Criterion(2, "valuation axioms on 500 samples for A1 and A2", 60):
        spec = ring_make(5, 1, 3)
        for label, rank in (("A", 1), ("A", 2)):
            rep = check_p_valuation_axioms(
                spec, build_cached(label, rank), samples=500, seed=0
            )
            assert rep["samples"] == 500
            assert rep["checked"] >= 500


def test_criterion_3_bracket_oracle():
    with Criterion(3, "bracket oracle on 300 pairs per datum", 120):
        for t, n, p, rank_one in [
            ("A", 1, 5, False), ("A", 2, 5, False), ("C", 2, 7, True),
        ]:
            alg = GradedLieAlgebra(build_cached(t, n), ring_make(p, 1, 3))
            rep = certify_brackets_against_oracle(
                alg, samples=300, seed=0, rank_one=rank_one
            )
            assert rep["checked"] == 300


def test_criterion_4_reduced_basis_counts():
    with Criterion(4, "reduced basis sizes, central torus, abelian negatives", 5):
        data = [
            ("A", 2, 5, 1, 0, 8), ("A", 1, 5, 2, 0, 6), ("B", 2, 7, 1, 0, 10),
            ("G", 2, 11, 1, 0, 14), ("A", 1, 5, 1, 1, 4),
        ]
        for t, n, p, f, dz, expect in data:
            rs = build_cached(t, n)
            alg = GradedLieAlgebra(rs, ring_make(p, f, 2), d_Z=dz)
            basis = alg.basis(reduced=True)
            assert len(basis) == expect == f * (len(rs.roots) + n + dz)
            elems = {s: alg.element({s: 1}) for s in basis}
            for s in basis:
                if s.kind == "torus":
                    for s2 in basis:
                        assert alg.bracket(elems[s], elems[s2]).is_zero()
                elif sum(s.key) < 0:
                    for s2 in basis:
                        if s2.kind == "root" and sum(s2.key) < 0:
                            assert alg.bracket(elems[s], elems[s2]).is_zero()


def test_criterion_5_minimal_generators():
    with Criterion(5, "generation closure and minimality certificates", 10):
        data = [
            ("A", 2, 5, 1, 0), ("A", 1, 5, 2, 0), ("B", 2, 7, 1, 0),
            ("C", 2, 7, 1, 0), ("A", 1, 5, 1, 1),
        ]
        for t, n, p, f, dz in data:
            env = EnvelopingAlgebra(
                GradedLieAlgebra(build_cached(t, n), ring_make(p, f, 2), d_Z=dz)
            )
            gens, cert = env.minimal_generating_set()
            assert len(gens) == f * (n + 1 + dz)
            assert cert["closure_rank"] == cert["dimension"]
            assert cert["lowest_slice_forced"] and cert["central_independent"]


def test_criterion_6_commutative_quotient():
    with Criterion(6, "commutative quotient generators and dimensions", 30):
        data = [
            ("A", 2, 5, 1, 0), ("A", 1, 5, 2, 0), ("B", 2, 7, 1, 0),
            ("A", 1, 5, 1, 1),
        ]
        for t, n, p, f, dz in data:
            env = EnvelopingAlgebra(
                GradedLieAlgebra(build_cached(t, n), ring_make(p, f, 2), d_Z=dz)
            )
            rep = env.commutative_quotient()
            assert rep["generator_count"] == f * (n + 1 + dz)
            assert rep["bound_num"] == 2 * env.alg.h


def test_criterion_7_filtration_suite():
    with Criterion(7, "group algebra congruences, memberships, comparison", 600):
        # small fixture independent of the root machinery
        rep = group_ring_congruence_suite(heisenberg_group(5), samples=200, seed=0)
        assert rep["checked"]["p-power"] == 200

        rs1 = build_cached("A", 1)
        rs2 = build_cached("A", 2)
        spec2 = ring_make(5, 1, 2)
        spec3 = ring_make(5, 1, 3)

        # rank-one image at precision two, order 5^4
        G625 = iwahori_quotient(rs1, spec2)
        assert len(G625) == 5**4
        lad = augmentation_powers(G625, 12)
        rep = group_ring_congruence_suite(G625, samples=200, seed=0, ladder=lad)
        assert rep["checked"]["p-power"] == 200
        mem = depth_membership_suite(G625, ladder=lad)
        assert mem["passed"] == 3 and mem["vacuous"] == 0
        comp = compare_filtrations(G625, aug=lad)
        assert comp["all_equal"]
        assert [l["k_num"] for l in comp["levels"]] == [1, 2, 3]

        # rank-one quotient derived from the precision-three matrix model
        G3125 = iwahori_quotient(rs1, spec3, cut=Grade(3, 2))
        assert len(G3125) == 5**5
        mem = depth_membership_suite(G3125)
        assert mem["passed"] == 3 and mem["vacuous"] == 0
        coroot_checks = [
            c for c in mem["checks"] if c["what"].startswith("coroot")
        ]
        assert coroot_checks and all(
            c["status"] == "pass" and c["level"] == 2 for c in coroot_checks
        )

        # the exact rank-one matrix identity behind the coroot membership
        assert coroot_commutator_matrix_identity(spec3, 0)
        f2spec = ring_make(5, 2, 3)
        assert coroot_commutator_matrix_identity(f2spec, 0)
        assert coroot_commutator_matrix_identity(f2spec, 1)

        # rank-two quotients derived from the precision-two matrix model
        G_a2_small = iwahori_quotient(
            rs2, spec2, cut=Grade(2, 3), kill_central=((0, -1), (-1, 0))
        )
        assert len(G_a2_small) == 5**4
        mem = depth_membership_suite(G_a2_small)
        assert mem["passed"] == 4
        theta = [c for c in mem["checks"] if c["what"].startswith("u[[1, 1]]")]
        assert theta[0]["status"] == "pass" and theta[0]["level"] == 2
        comp = compare_filtrations(G_a2_small)
        assert comp["all_equal"]

        G_a2 = iwahori_quotient(rs2, spec2, cut=Grade(2, 3), kill_central=((0, -1),))
        assert len(G_a2) == 5**5
        comp = compare_filtrations(G_a2)
        assert comp["all_equal"]
        assert [l["k_num"] for l in comp["levels"]] == [1, 2]
        mem = depth_membership_suite(G_a2)
        assert mem["passed"] >= 5

        # reductive model: the central one-unit separates the filtrations
        Gz = shrink_to_budget(rs1, spec2, d_Z=1, budget=5**4)
        comp = compare_filtrations(Gz)
        assert not comp["all_equal"]
        assert comp["central_witness"]["separates"]
        Gz_big = iwahori_quotient(rs1, spec2, d_Z=1)
        assert len(Gz_big) == 5**5
        comp = compare_filtrations(Gz_big)
        assert not comp["all_equal"]
        assert comp["central_witness"]["separates"]


def test_criterion_8_kernel_oracle():
    with Criterion(8, "augmentation dimensions match closed forms", 5):
        lad = augmentation_powers(cyclic_group(5), 6)
        assert quotient_dimensions(lad) == [1, 1, 1, 1, 1, 0]
        lad = augmentation_powers(elementary_abelian(5, 2), 10)
        assert quotient_dimensions(lad) == [1, 2, 3, 4, 5, 4, 3, 2, 1, 0]


def test_criterion_9_growth_bound_dichotomy():
    with Criterion(9, "growth bound conflict flag over rank four", 1):
        types = [("A", n) for n in range(1, 5)]
        types += [("B", n) for n in (2, 3, 4)]
        types += [("C", n) for n in (2, 3, 4)]
        types += [("D", 4), ("F", 4), ("G", 2)]
        for t, n in types:
            for f in (1, 2):
                summary = gk_bounds(t, n, f)
                assert summary.conflict == (n > 1 and not (t == "A" and n == 2))


def test_criterion_10_deterministic_reports(tmp_path):
    with Criterion(10, "verification reports are byte identical", 120):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        args = ["verify", "--type", "A1", "--p", "5", "--seed", "0",
                "--samples", "60"]
        assert main(args + ["--json", str(out1)]) == 0
        assert main(args + ["--json", str(out2)]) == 0
        b1, b2 = out1.read_bytes(), out2.read_bytes()
        assert b1 == b2 and len(b1) > 500
