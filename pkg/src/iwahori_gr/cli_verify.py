"""Command-line surface: verification runs with deterministic JSON reports,
root system info, the growth-bound table, and data exports.

Exit codes: 0 when every check passes, 1 on any failure, 2 on inadmissible
input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

from . import __version__
from .chevalley import (
    CONVENTION_ID,
    certify_constants,
    compute_constants,
    export_rows,
)
from .enveloping import EnvelopingAlgebra
from .errors import InadmissiblePrime, IwahoriGrError
from .graded_lie import BasisSymbol, GradedLieAlgebra, certify_brackets_against_oracle
from .group_algebra_filtration import (
    compare_filtrations,
    coroot_commutator_matrix_identity,
    depth_membership_suite,
    augmentation_powers,
    group_cap,
    group_ring_congruence_suite,
    heisenberg_group,
    shrink_to_budget,
)
from .iwahori_group import check_p_valuation_axioms
from .padic_ring import ring_make
from .root_system import (
    build_cached,
    cartan_determinant,
    check_admissible,
    parse_type,
    smallest_admissible_prime,
)

SCHEMA_VERSION = 1
ORDER_ID = "height-then-reverse-lex"
SYMBOL_ORDER_ID = "grade/root-order/twist"


# ---------------------------------------------------------------------------
# growth bound summary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GKBoundSummary:
    type_label: str
    rank: int
    f: int
    bound: int      # f * (|Delta| + 1): the commutative-quotient dimension
    expected: int   # f * |negative roots|: the flag-variety count
    conflict: bool

    def to_dict(self) -> dict:
        return {
            "type": f"{self.type_label}{self.rank}",
            "f": self.f,
            "commutative_bound": self.bound,
            "flag_dimension": self.expected,
            "conflict": self.conflict,
        }


def gk_bounds(type_label: str, rank: int, f: int) -> GKBoundSummary:
    rs = build_cached(type_label, rank)
    bound = f * (rs.rank + 1)
    expected = f * len(rs.positives)
    return GKBoundSummary(type_label, rank, f, bound, expected, bound < expected)


# ---------------------------------------------------------------------------
# the verification run
# ---------------------------------------------------------------------------

def _check(checks: list, anchor: str, fn):
    try:
        detail = fn()
        checks.append({"anchor": anchor, "status": "pass", "detail": detail})
    except IwahoriGrError as err:
        checks.append({"anchor": anchor, "status": "fail", "detail": str(err)})


def _skip(checks: list, anchor: str, reason: str):
    checks.append({"anchor": anchor, "status": "skipped", "detail": reason})


def verify_all(
    type_label: str,
    rank: int,
    p: int | None = None,
    f: int = 1,
    N: int = 2,
    d_Z: int = 0,
    seed: int = 0,
    samples: int = 120,
    grade_bound: int | None = None,
    filtration: bool = True,
    filtration_budget: int | None = None,
) -> dict:
    """Run every applicable check on one datum and assemble the report.
    Raises InadmissiblePrime when p is too small for the Coxeter number."""
    rs = build_cached(type_label, rank)
    h = rs.coxeter_number()
    if p is None:
        p = smallest_admissible_prime(rs)
    if not check_admissible(rs, p):
        raise InadmissiblePrime(
            f"{type_label}{rank} needs a prime above {h + 1}, got {p}"
        )
    spec = ring_make(p, f, N)
    checks: list[dict] = []

    sc = compute_constants(rs)
    _check(checks, "constants/jacobi-strings-matrix", lambda: certify_constants(sc, p))

    if type_label == "A":
        _check(
            checks,
            "valuation/five-axioms",
            lambda: check_p_valuation_axioms(spec, rs, samples=samples, seed=seed),
        )
    else:
        _skip(checks, "valuation/five-axioms", "matrix sampling model is type A only")

    alg = GradedLieAlgebra(rs, spec, d_Z=d_Z, constants=sc)
    if type_label == "A":
        _check(
            checks,
            "bracket/group-oracle",
            lambda: certify_brackets_against_oracle(alg, samples=samples, seed=seed),
        )
    _check(
        checks,
        "bracket/rank-one-oracle",
        lambda: certify_brackets_against_oracle(
            alg, samples=max(20, samples // 3), seed=seed, rank_one=True
        ),
    )

    def basis_counts():
        basis = alg.basis(reduced=True)
        expect = f * (len(rs.roots) + rs.rank + d_Z)
        if len(basis) != expect:
            raise IwahoriGrError(f"basis size {len(basis)} != {expect}")
        for s in basis:
            if s.kind != "torus":
                continue
            for s2 in basis:
                if not alg.bracket(
                    alg.element({s: 1}), alg.element({s2: 1})
                ).is_zero():
                    raise IwahoriGrError(f"torus symbol {s} is not central")
        for s in basis:
            if s.kind == "root" and sum(s.key) < 0:
                for s2 in basis:
                    if s2.kind == "root" and sum(s2.key) < 0:
                        if not alg.bracket(
                            alg.element({s: 1}), alg.element({s2: 1})
                        ).is_zero():
                            raise IwahoriGrError("negative pair brackets nonzero")
        return {"basis": len(basis), "grades": sorted({alg.grade_num(s) for s in basis})}

    _check(checks, "reduced-basis/counts-centrality", basis_counts)

    env = EnvelopingAlgebra(alg)

    def minimal_gens():
        gens, cert = env.minimal_generating_set()
        expect = f * (rank + 1 + d_Z)
        if len(gens) != expect:
            raise IwahoriGrError(f"{len(gens)} generators, expected {expect}")
        return cert

    _check(checks, "enveloping/minimal-generators", minimal_gens)
    _check(
        checks,
        "enveloping/commutative-quotient",
        lambda: env.commutative_quotient(grade_bound),
    )

    if filtration and type_label == "A" and rank <= 2:
        budget = filtration_budget if filtration_budget is not None else min(
            group_cap(), 5**4
        )

        def filtration_suite():
            G = shrink_to_budget(rs, spec, d_Z=d_Z, budget=budget)
            k_top = G.meta["max_grade_num"]
            n_deep = max(2 * p + 2, h, k_top) if len(G) <= 700 else max(h, k_top)
            ladder = augmentation_powers(G, n_deep)
            cong = group_ring_congruence_suite(
                G, samples=max(40, samples // 3), seed=seed, ladder=ladder
            )
            member = depth_membership_suite(G, ladder=ladder)
            comp = compare_filtrations(G, aug=ladder)
            matrix_ok = all(
                coroot_commutator_matrix_identity(spec, r) for r in range(f)
            )
            if not matrix_ok:
                raise IwahoriGrError("rank-one coroot commutator identity failed")
            expected_equal = d_Z == 0
            if comp["all_equal"] != expected_equal:
                raise IwahoriGrError(
                    f"filtration comparison all_equal={comp['all_equal']}, "
                    f"expected {expected_equal}"
                )
            if d_Z > 0 and not comp["central_witness"]["separates"]:
                raise IwahoriGrError("central witness failed to separate")
            return {
                "group": G.name,
                "order": len(G),
                "congruences": cong["checked"],
                "memberships": {
                    "passed": member["passed"],
                    "vacuous": member["vacuous"],
                },
                "comparison": comp["levels"],
                "all_equal": comp["all_equal"],
                "central_witness": comp.get("central_witness"),
            }

        _check(checks, "filtration/adic-vs-weighted", filtration_suite)
    elif filtration:
        _skip(
            checks,
            "filtration/adic-vs-weighted",
            "finite quotient models run on type A of rank at most 2",
        )

    gk = gk_bounds(type_label, rank, f)

    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "iwahori-gr", "version": __version__},
        "datum": {
            "type": f"{type_label}{rank}",
            "p": p,
            "f": f,
            "N": N,
            "d_Z": d_Z,
            "semisimple": d_Z == 0,
            "coxeter_number": h,
            "cartan_determinant": cartan_determinant(rs),
        },
        "seed": seed,
        "conventions": {
            "constants": CONVENTION_ID,
            "total_order": ORDER_ID,
            "symbol_order": SYMBOL_ORDER_ID,
            "modulus": list(spec.modulus),
        },
        "growth_bound": gk.to_dict(),
        "checks": checks,
        "summary": {
            "pass": sum(1 for c in checks if c["status"] == "pass"),
            "fail": sum(1 for c in checks if c["status"] == "fail"),
            "skipped": sum(1 for c in checks if c["status"] == "skipped"),
        },
    }
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

def export_data(what: str, type_label: str, rank: int, p: int | None, f: int,
                N: int, d_Z: int, out_path: str, fmt: str = "json") -> str:
    rs = build_cached(type_label, rank)
    if p is None:
        p = smallest_admissible_prime(rs)
    spec = ring_make(p, f, N)

    if what == "constants":
        sc = compute_constants(rs)
        rows = export_rows(sc)
        if fmt == "csv":
            with open(out_path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["alpha", "beta", "i", "j", "c"])
                for r in rows:
                    w.writerow([r["alpha"], r["beta"], r["i"], r["j"], r["c"]])
        else:
            payload = {"schema_version": SCHEMA_VERSION, "type": rs.name,
                       "convention": CONVENTION_ID, "constants": rows}
            with open(out_path, "w") as fh:
                fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return out_path

    if what == "brackets":
        alg = GradedLieAlgebra(rs, spec, d_Z=d_Z)
        basis = alg.basis(reduced=True)

        def describe(s: BasisSymbol):
            return {"kind": s.kind, "key": list(s.key), "twist": s.twist}

        table = []
        for s1 in basis:
            for s2 in basis:
                out = alg.bracket(alg.element({s1: 1}), alg.element({s2: 1}))
                table.append(
                    {
                        "left": describe(s1),
                        "right": describe(s2),
                        "result": [
                            {"symbol": describe(s), "coeff": c}
                            for s, c in sorted(
                                out.terms.items(), key=lambda kv: alg.symbol_sort_key(kv[0])
                            )
                        ],
                    }
                )
        payload = {"schema_version": SCHEMA_VERSION, "type": rs.name, "p": p,
                   "f": f, "d_Z": d_Z, "basis_size": len(basis), "table": table}
        with open(out_path, "w") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return out_path

    if what == "quotient":
        alg = GradedLieAlgebra(rs, spec, d_Z=d_Z)
        env = EnvelopingAlgebra(alg)
        payload = {"schema_version": SCHEMA_VERSION, "type": rs.name, "p": p,
                   "f": f, "d_Z": d_Z, "quotient": env.commutative_quotient()}
        with open(out_path, "w") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return out_path

    if what == "filtration":
        G = shrink_to_budget(rs, spec, d_Z=d_Z, budget=min(group_cap(), 5**5))
        comp = compare_filtrations(G)
        ladder = augmentation_powers(G, max(k["k_num"] for k in comp["levels"]) + 1)
        from .group_algebra_filtration import quotient_dimensions

        qdims = quotient_dimensions(ladder)
        if fmt == "csv":
            with open(out_path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["n", "dim_m_n_over_m_n1"])
                for n, d in enumerate(qdims):
                    w.writerow([n, d])
        else:
            payload = {"schema_version": SCHEMA_VERSION, "comparison": comp,
                       "adic_quotient_dims": qdims}
            with open(out_path, "w") as fh:
                fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return out_path

    raise ValueError(f"unknown export {what!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def roots_info(type_label: str, rank: int) -> dict:
    rs = build_cached(type_label, rank)
    h = rs.coxeter_number()
    return {
        "type": rs.name,
        "rank": rs.rank,
        "roots": len(rs.roots),
        "positive_roots": len(rs.positives),
        "coxeter_number": h,
        "cartan_determinant": cartan_determinant(rs),
        "smallest_admissible_prime": smallest_admissible_prime(rs),
        "highest_root": list(rs.highest_root),
        "classes": {
            k: [list(r) for r in rs.height_class(k).members] for k in range(1, h)
        },
        "total_order": [list(r) for r in rs.roots],
    }


def _add_datum_args(sp, with_dz=True):
    sp.add_argument("--type", required=True, help="root system label, e.g. A2")
    sp.add_argument("--p", type=int, default=None, help="prime (default: smallest admissible)")
    sp.add_argument("--f", type=int, default=1, help="residue degree")
    sp.add_argument("--N", type=int, default=2, help="truncation level")
    if with_dz:
        sp.add_argument("--reductive", type=int, default=0, metavar="DZ",
                        help="central torus rank")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="iwahori-gr",
        description="Graded Lie algebra of a pro-p Iwahori subgroup: "
                    "construction, presentation, and verification at finite precision.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("roots", help="root system information")
    sp.add_argument("action", choices=["info"])
    sp.add_argument("label", help="root system label, e.g. A2")
    sp.add_argument("--json", dest="json_out", default=None, help="write JSON here")

    sp = sub.add_parser("verify", help="run the verification suite on one datum")
    _add_datum_args(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=120)
    sp.add_argument("--grade-bound", type=int, default=None,
                    help="numerator bound for quotient slices (default 2h)")
    sp.add_argument("--no-filtration", action="store_true",
                    help="skip the finite-quotient filtration suite")
    sp.add_argument("--filtration-budget", type=int, default=None,
                    help="largest finite quotient order to enumerate")
    sp.add_argument("--json", dest="json_out", default=None, help="write the report here")

    sp = sub.add_parser("gk", help="growth bound from the commutative quotient")
    sp.add_argument("--type", required=True)
    sp.add_argument("--f", type=int, default=1)

    sp = sub.add_parser("export", help="write tables to a file")
    sp.add_argument("what", choices=["brackets", "constants", "quotient", "filtration"])
    _add_datum_args(sp)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=["json", "csv"], default="json")

    args = parser.parse_args(argv)

    if args.command == "roots":
        t, r = parse_type(args.label)
        info = roots_info(t, r)
        text = json.dumps(info, sort_keys=True, indent=2) + "\n"
        if args.json_out:
            with open(args.json_out, "w") as fh:
                fh.write(text)
        sys.stdout.write(text)
        return 0

    if args.command == "gk":
        t, r = parse_type(args.type)
        summary = gk_bounds(t, r, args.f)
        sys.stdout.write(json.dumps(summary.to_dict(), sort_keys=True, indent=2) + "\n")
        return 0

    if args.command == "verify":
        t, r = parse_type(args.type)
        try:
            report = verify_all(
                t, r, p=args.p, f=args.f, N=args.N, d_Z=args.reductive,
                seed=args.seed, samples=args.samples, grade_bound=args.grade_bound,
                filtration=not args.no_filtration,
                filtration_budget=args.filtration_budget,
            )
        except InadmissiblePrime as err:
            sys.stderr.write(f"inadmissible: {err}\n")
            return 2
        text = report_to_json(report)
        if args.json_out:
            with open(args.json_out, "w") as fh:
                fh.write(text)
        for c in report["checks"]:
            sys.stdout.write(f"[{c['status']:>7}] {c['anchor']}\n")
        s = report["summary"]
        sys.stdout.write(
            f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped\n"
        )
        return 0 if s["fail"] == 0 else 1

    if args.command == "export":
        t, r = parse_type(args.type)
        try:
            path = export_data(args.what, t, r, args.p, args.f, args.N,
                               args.reductive, args.out, args.format)
        except OSError as err:
            sys.stderr.write(f"cannot write: {err}\n")
            return 1
        sys.stdout.write(f"wrote {path}\n")
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
