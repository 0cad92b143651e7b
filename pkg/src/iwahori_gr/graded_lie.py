"""The graded Lie algebra attached to the valued Iwahori subgroup: basis
symbols indexed by roots and basis cocharacters with depth and twist, the
degree-one shift operator, bracket rules, and certification of the bracket
against actual group commutators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Mismatch, MixedReduction, ReducedInput, InadmissiblePrime
from .chevalley import StructureConstants, compute_constants
from .iwahori_group import (
    AboveTruncation,
    Grade,
    IwahoriElement,
    coroot_element,
    commutator,
    multiply,
    omega_or_floor,
    torus_element,
    unipotent_element,
)
from .padic_ring import (
    RingSpec,
    TruncatedUnramified,
    teichmuller,
    valuation,
    xi_power_coeffs,
)
from .root_system import Cocharacter, CocharacterLattice, RootSystem

Root = tuple[int, ...]


@dataclass(frozen=True, order=True)
class BasisSymbol:
    """One graded generator: the class of u_root(p^(depth + delta) xi-lift)
    for kind "root", or of lambda(1 + p^depth xi-lift) for kind "torus"."""

    kind: str           # "root" or "torus"
    key: tuple          # root coordinates, or a cocharacter label
    depth: int          # n >= 0 for roots, m >= 1 for torus symbols
    twist: int          # power of the residue field generator

    def shifted(self, levels: int = 1) -> BasisSymbol:
        return BasisSymbol(self.kind, self.key, self.depth + levels, self.twist)


class GradedLieElement:
    """Sparse combination of basis symbols over F_p, graded internally."""

    __slots__ = ("alg", "terms", "reduced")

    def __init__(self, alg: GradedLieAlgebra, terms=None, reduced: bool = True):
        self.alg = alg
        self.reduced = reduced
        self.terms: dict[BasisSymbol, int] = {}
        p = alg.spec.p
        for s, c in (terms or {}).items():
            c %= p
            if c:
                self.terms[s] = c

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedLieElement)
            and self.reduced == other.reduced
            and self.terms == other.terms
        )

    def __add__(self, other: GradedLieElement) -> GradedLieElement:
        if self.reduced != other.reduced:
            raise MixedReduction("cannot add across the reduction")
        out = dict(self.terms)
        p = self.alg.spec.p
        for s, c in other.terms.items():
            v = (out.get(s, 0) + c) % p
            if v:
                out[s] = v
            elif s in out:
                del out[s]
        return GradedLieElement(self.alg, out, self.reduced)

    def scale(self, c: int) -> GradedLieElement:
        return GradedLieElement(
            self.alg, {s: v * c for s, v in self.terms.items()}, self.reduced
        )

    def components(self) -> dict[int, dict[BasisSymbol, int]]:
        """Group the terms by grade numerator."""
        out: dict[int, dict[BasisSymbol, int]] = {}
        for s, c in self.terms.items():
            out.setdefault(self.alg.grade_num(s), {})[s] = c
        return out

    def __repr__(self) -> str:
        bits = [f"{c}*{s.kind}{s.key}@d{s.depth}t{s.twist}" for s, c in sorted(self.terms.items())]
        return " + ".join(bits) if bits else "0"


class GradedLieAlgebra:
    """Bracket rules and basis bookkeeping for one datum (root system,
    truncated ring, central rank)."""

    def __init__(self, rs: RootSystem, spec: RingSpec, d_Z: int = 0,
                 constants: StructureConstants | None = None):
        h = rs.coxeter_number()
        if spec.p <= h + 1:
            raise InadmissiblePrime(
                f"prime {spec.p} is not admissible for Coxeter number {h}"
            )
        self.rs = rs
        self.spec = spec
        self.d_Z = d_Z
        self.lattice = CocharacterLattice(rs, d_Z)
        self.sc = constants if constants is not None else compute_constants(rs)
        self.h = h

    # -- symbols -------------------------------------------------------------

    def grade_num(self, s: BasisSymbol) -> int:
        if s.kind == "torus":
            return s.depth * self.h
        return s.depth * self.h + self.rs.class_index(s.key)

    def symbol_sort_key(self, s: BasisSymbol):
        if s.kind == "root":
            pos = (0, self.rs.index[s.key])
        else:
            basis = self.lattice.basis()
            pos = (1, basis.index(s.key))
        return (self.grade_num(s), pos, s.twist)

    def basis(self, reduced: bool = True, max_grade_num: int | None = None) -> list[BasisSymbol]:
        """The reduced basis has one symbol per root and basis cocharacter
        and twist; the unreduced basis repeats them at every depth up to the
        grade bound."""
        f = self.spec.f
        out: list[BasisSymbol] = []
        if reduced:
            for g in self.rs.roots:
                for r in range(f):
                    out.append(BasisSymbol("root", g, 0, r))
            for lam in self.lattice.basis():
                for r in range(f):
                    out.append(BasisSymbol("torus", lam, 1, r))
        else:
            assert max_grade_num is not None
            for g in self.rs.roots:
                k = self.rs.class_index(g)
                n = 0
                while n * self.h + k <= max_grade_num:
                    for r in range(f):
                        out.append(BasisSymbol("root", g, n, r))
                    n += 1
            for lam in self.lattice.basis():
                m = 1
                while m * self.h <= max_grade_num:
                    for r in range(f):
                        out.append(BasisSymbol("torus", lam, m, r))
                    m += 1
        out.sort(key=self.symbol_sort_key)
        return out

    def element(self, terms, reduced: bool = True) -> GradedLieElement:
        return GradedLieElement(self, terms, reduced)

    # -- bracket --------------------------------------------------------------

    def _twist_terms(self, r: int) -> list[tuple[int, int]]:
        spec = self.spec
        if r < spec.f:
            return [(r, 1)]
        coeffs = xi_power_coeffs(spec.p, spec.f, spec.modulus, r)
        return [(t, c) for t, c in enumerate(coeffs) if c % spec.p]

    def _bracket_symbols(self, s1: BasisSymbol, s2: BasisSymbol) -> dict[BasisSymbol, int]:
        rs = self.rs
        p = self.spec.p
        if s1.kind == "torus" and s2.kind == "torus":
            return {}
        if s1.kind == "root" and s2.kind == "torus":
            inner = self._bracket_symbols(s2, s1)
            return {s: -c % p for s, c in inner.items()}
        if s1.kind == "torus":
            c = self.lattice.pairing(s2.key, s1.key) % p
            if c == 0:
                return {}
            out = {}
            for t, a in self._twist_terms(s1.twist + s2.twist):
                out[BasisSymbol("root", s2.key, s2.depth + s1.depth, t)] = c * a % p
            return out
        # two root symbols
        a, b = s1.key, s2.key
        if b == tuple(-x for x in a):
            if sum(a) < 0:
                inner = self._bracket_symbols(s2, s1)
                return {s: -c % p for s, c in inner.items()}
            coords = rs.coroot_coordinates(a)
            depth = s1.depth + s2.depth + 1
            out = {}
            for t, u in self._twist_terms(s1.twist + s2.twist):
                for i, ci in enumerate(coords):
                    if ci % p:
                        sym = BasisSymbol("torus", ("coroot", i), depth, t)
                        v = (out.get(sym, 0) + ci * u) % p
                        if v:
                            out[sym] = v
                        elif sym in out:
                            del out[sym]
            return out
        s = tuple(x + y for x, y in zip(a, b))
        if s not in rs.index:
            return {}
        c = self.sc.n11[(a, b)] % p
        depth = s1.depth + s2.depth + rs.delta(a) + rs.delta(b) - rs.delta(s)
        assert depth >= 0
        out = {}
        for t, u in self._twist_terms(s1.twist + s2.twist):
            out[BasisSymbol("root", s, depth, t)] = c * u % p
        return out

    def bracket(self, x: GradedLieElement, y: GradedLieElement) -> GradedLieElement:
        """Bilinear extension of the symbol rules; in reduced mode every
        term of grade above 1 is a shift-operator multiple and dies."""
        if x.reduced != y.reduced:
            raise MixedReduction("cannot bracket across the reduction")
        p = self.spec.p
        out: dict[BasisSymbol, int] = {}
        for s1, c1 in x.terms.items():
            for s2, c2 in y.terms.items():
                for s, c in self._bracket_symbols(s1, s2).items():
                    if x.reduced and self.grade_num(s) > self.h:
                        continue
                    v = (out.get(s, 0) + c1 * c2 * c) % p
                    if v:
                        out[s] = v
                    elif s in out:
                        del out[s]
        return GradedLieElement(self, out, x.reduced)

    def p_operator(self, x: GradedLieElement) -> GradedLieElement:
        """The degree-one shift induced by p-th powers; a bijection on
        basis symbols."""
        if x.reduced:
            raise ReducedInput("the shift operator acts on the unreduced algebra")
        return GradedLieElement(
            self, {s.shifted(): c for s, c in x.terms.items()}, reduced=False
        )

    # -- dictionary with the group -------------------------------------------

    def symbol_to_group_element(self, s: BasisSymbol) -> IwahoriElement:
        rs, spec = self.rs, self.spec
        tw = teichmuller(s.twist, spec)
        if s.kind == "root":
            exp = s.depth + rs.delta(s.key)
            x = spec.from_int(spec.p**exp) * tw
            return unipotent_element(rs, spec, s.key, x)
        unit = spec.one() + spec.from_int(spec.p**s.depth) * tw
        return torus_element(rs, spec, s.key, unit)

    def graded_image(self, e: IwahoriElement):
        """(grade, element) of a group element in its graded piece, or
        (AboveTruncation, None) when the precision cannot certify it."""
        o = omega_or_floor(e)
        if isinstance(o, AboveTruncation):
            return o, None
        rs, spec = self.rs, self.spec
        terms: dict[BasisSymbol, int] = {}
        p = spec.p
        for root, x in list(e.pos.items()) + list(e.neg.items()):
            v = valuation(x)
            if v * self.h + sum(root) != o.num:
                continue
            depth = v - rs.delta(root)
            pk = p**v
            for t in range(spec.f):
                c = (x.coeffs[t] // pk) % p
                if c:
                    terms[BasisSymbol("root", root, depth, t)] = c
        one = spec.one()
        for lam, u in e.torus.items():
            d = valuation(u - one)
            if d * self.h != o.num:
                continue
            pk = p**d
            for t in range(spec.f):
                c = ((u - one).coeffs[t] // pk) % p
                if c:
                    sym = BasisSymbol("torus", lam, d, t)
                    terms[sym] = (terms.get(sym, 0) + c) % p
        return o, GradedLieElement(self, terms, reduced=False)


def certify_brackets_against_oracle(
    alg: GradedLieAlgebra, samples: int = 300, seed: int = 0, rank_one: bool = False
) -> dict:
    """Compare the bracket with graded images of true group commutators on
    random symbol pairs.  Raises Mismatch with a witness on disagreement."""
    import random

    rng = random.Random(seed)
    rs, spec = alg.rs, alg.spec
    depth_cap = max(0, spec.N - 2)
    pool: list[BasisSymbol] = []
    for g in rs.roots:
        for n in range(depth_cap + 1):
            for r in range(spec.f):
                pool.append(BasisSymbol("root", g, n, r))
    for lam in alg.lattice.basis():
        for r in range(spec.f):
            pool.append(BasisSymbol("torus", lam, 1, r))

    counts = {"checked": 0, "uncertified": 0}
    attempts = 0
    while counts["checked"] < samples and attempts < 50 * samples:
        attempts += 1
        s1, s2 = rng.choice(pool), rng.choice(pool)
        if rank_one and rs.type_label != "A":
            if s1.kind != "root" or s2.kind != "root":
                continue
            if s1.key != tuple(-c for c in s2.key):
                continue
        elif rs.type_label != "A":
            continue
        if s1.kind == "torus" and s2.kind == "torus":
            continue
        g1 = alg.grade_num(s1)
        g2 = alg.grade_num(s2)
        if g1 + g2 > (spec.N - 1) * alg.h:
            continue
        e1 = alg.symbol_to_group_element(s1)
        e2 = alg.symbol_to_group_element(s2)
        try:
            comm = commutator(e1, e2)
        except Exception:
            continue
        expected = alg.bracket(
            alg.element({s1: 1}, reduced=False), alg.element({s2: 1}, reduced=False)
        )
        got_grade, got = alg.graded_image(comm) if not comm.is_identity() else (
            AboveTruncation((spec.N - 1) * alg.h + 1, alg.h),
            None,
        )
        if expected.is_zero():
            if isinstance(got_grade, Grade):
                if got_grade.num <= g1 + g2:
                    raise Mismatch(
                        f"bracket vanishes but the commutator has grade {got_grade} "
                        f"for {s1}, {s2}"
                    )
                counts["checked"] += 1
            elif got_grade.lower_num > g1 + g2:
                counts["checked"] += 1
            else:
                counts["uncertified"] += 1
            continue
        if isinstance(got_grade, AboveTruncation):
            if got_grade.lower_num <= g1 + g2:
                counts["uncertified"] += 1
                continue
            raise Mismatch(
                f"nonzero bracket but the commutator sits above grade "
                f"{g1 + g2} for {s1}, {s2}"
            )
        if got_grade.num != g1 + g2 or got != expected:
            raise Mismatch(
                f"graded commutator disagrees with the bracket for {s1}, {s2}: "
                f"{got_grade}, {got!r} vs {expected!r}"
            )
        counts["checked"] += 1
    counts["samples_requested"] = samples
    return counts
