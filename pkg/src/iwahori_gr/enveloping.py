"""Enveloping algebra of the reduced graded Lie algebra: PBW normal form
by straightening, graded dimensions, the minimal generating set, and the
largest commutative quotient computed by per-grade linear algebra."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GenerationFailure, QuotientMismatch
from .graded_lie import BasisSymbol, GradedLieAlgebra

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# small dense linear algebra over F_p
# ---------------------------------------------------------------------------

class FpEchelon:
    """Row space in reduced echelon form; rows are lists over F_p."""

    def __init__(self, width: int, p: int):
        self.width = width
        self.p = p
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def _reduce(self, vec: list[int]) -> list[int]:
        p = self.p
        for row, piv in zip(self.rows, self.pivots):
            c = vec[piv]
            if c:
                vec = [(a - c * b) % p for a, b in zip(vec, row)]
        return vec

    def add(self, vec: list[int]) -> bool:
        """Insert a vector; returns True when the rank grew."""
        vec = self._reduce([v % self.p for v in vec])
        piv = next((i for i, v in enumerate(vec) if v), None)
        if piv is None:
            return False
        inv = pow(vec[piv], -1, self.p)
        vec = [v * inv % self.p for v in vec]
        for row in self.rows:
            c = row[piv]
            if c:
                row[:] = [(a - c * b) % self.p for a, b in zip(row, vec)]
        self.rows.append(vec)
        self.pivots.append(piv)
        return True

    def contains(self, vec: list[int]) -> bool:
        return all(v == 0 for v in self._reduce([v % self.p for v in vec]))

    @property
    def rank(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class PBWElement:
    """F_p combination of PBW monomials; keys are non-decreasing words of
    symbol indices."""

    __slots__ = ("env", "terms")

    def __init__(self, env: EnvelopingAlgebra, terms=None):
        self.env = env
        self.terms: dict[Word, int] = {}
        p = env.p
        for w, c in (terms or {}).items():
            c %= p
            if c:
                self.terms[w] = c

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, PBWElement) and self.terms == other.terms

    def __add__(self, other: PBWElement) -> PBWElement:
        out = dict(self.terms)
        p = self.env.p
        for w, c in other.terms.items():
            v = (out.get(w, 0) + c) % p
            if v:
                out[w] = v
            elif w in out:
                del out[w]
        return PBWElement(self.env, out)

    def scale(self, c: int) -> PBWElement:
        return PBWElement(self.env, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: PBWElement) -> PBWElement:
        return self.env.multiply(self, other)

    def grades(self) -> set[int]:
        return {self.env.word_grade(w) for w in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms):
            names = "*".join(self.env.symbol_name(i) for i in w) or "1"
            bits.append(f"{self.terms[w]}*{names}")
        return " + ".join(bits)


@dataclass
class Ideal:
    """A graded two-sided ideal, tracked slice by slice up to a bound."""

    generators: list[PBWElement]
    slices: dict[int, FpEchelon] = field(default_factory=dict)
    monomials: dict[int, list[Word]] = field(default_factory=dict)

    def dim(self, grade_num: int) -> int:
        return self.slices[grade_num].rank if grade_num in self.slices else 0


class EnvelopingAlgebra:
    """PBW arithmetic over the reduced graded Lie algebra of one datum."""

    def __init__(self, alg: GradedLieAlgebra):
        self.alg = alg
        self.p = alg.spec.p
        self.symbols: list[BasisSymbol] = alg.basis(reduced=True)
        self.sym_index = {s: i for i, s in enumerate(self.symbols)}
        self.grades = [alg.grade_num(s) for s in self.symbols]
        self._bracket_cache: dict[tuple[int, int], dict[int, int]] = {}

    # -- naming and grading ----------------------------------------------------

    def symbol_name(self, i: int) -> str:
        s = self.symbols[i]
        if s.kind == "root":
            core = f"u{list(s.key)}"
        else:
            core = f"{s.key[0]}{s.key[1]}"
        return core + (f"#t{s.twist}" if self.alg.spec.f > 1 else "")

    def word_grade(self, w: Word) -> int:
        return sum(self.grades[i] for i in w)

    def one(self) -> PBWElement:
        return PBWElement(self, {(): 1})

    def generator(self, s: BasisSymbol) -> PBWElement:
        return PBWElement(self, {(self.sym_index[s],): 1})

    def from_lie(self, terms: dict[BasisSymbol, int]) -> PBWElement:
        return PBWElement(self, {(self.sym_index[s],): c for s, c in terms.items()})

    # -- straightening -----------------------------------------------------------

    def _bracket_ix(self, i: int, j: int) -> dict[int, int]:
        """[s_i, s_j] in symbol indices."""
        key = (i, j)
        if key not in self._bracket_cache:
            out = self.alg.bracket(
                self.alg.element({self.symbols[i]: 1}),
                self.alg.element({self.symbols[j]: 1}),
            )
            self._bracket_cache[key] = {
                self.sym_index[s]: c for s, c in out.terms.items()
            }
        return self._bracket_cache[key]

    def normalize(self, word: Word, coeff: int = 1, strategy: str = "left",
                  rng=None) -> dict[Word, int]:
        """Rewrite an arbitrary word into the PBW basis.  Each swap of an
        out-of-order adjacent pair costs a shorter bracket term, so the
        rewriting terminates; the strategy picks which inversion to fix."""
        p = self.p
        out: dict[Word, int] = {}
        stack: list[tuple[Word, int]] = [(tuple(word), coeff % p)]
        while stack:
            w, c = stack.pop()
            if not c:
                continue
            invs = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
            if not invs:
                v = (out.get(w, 0) + c) % p
                if v:
                    out[w] = v
                elif w in out:
                    del out[w]
                continue
            if strategy == "left":
                k = invs[0]
            elif strategy == "right":
                k = invs[-1]
            else:
                k = rng.choice(invs)
            i, j = w[k], w[k + 1]
            stack.append((w[:k] + (j, i) + w[k + 2 :], c))
            for sidx, cc in self._bracket_ix(i, j).items():
                stack.append((w[:k] + (sidx,) + w[k + 2 :], c * cc % p))
        return out

    def multiply(self, x: PBWElement, y: PBWElement, strategy: str = "left",
                 rng=None) -> PBWElement:
        p = self.p
        acc: dict[Word, int] = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                for w, c in self.normalize(w1 + w2, c1 * c2, strategy, rng).items():
                    v = (acc.get(w, 0) + c) % p
                    if v:
                        acc[w] = v
                    elif w in acc:
                        del acc[w]
        return PBWElement(self, acc)

    # -- graded pieces -----------------------------------------------------------

    def monomials_of_grade(self, grade_num: int) -> list[Word]:
        """All PBW monomials of one grade, in lexicographic word order."""
        out: list[Word] = []
        n = len(self.symbols)

        def rec(start: int, remaining: int, acc: list[int]):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for i in range(start, n):
                g = self.grades[i]
                if g <= remaining:
                    acc.append(i)
                    rec(i, remaining - g, acc)
                    acc.pop()

        rec(0, grade_num, [])
        return sorted(out)

    def graded_dimension(self, grade_num: int) -> int:
        return len(self.monomials_of_grade(grade_num))

    def hilbert_coefficient(self, grade_num: int) -> int:
        """Coefficient of the PBW generating function, as an independent
        cross-check on the monomial enumeration."""
        coeffs = [1] + [0] * grade_num
        for g in self.grades:
            # multiply by 1/(1 - t^g)
            for k in range(g, grade_num + 1):
                coeffs[k] += coeffs[k - g]
        return coeffs[grade_num]

    # -- minimal generating set ---------------------------------------------------

    def standard_generators(self) -> list[BasisSymbol]:
        """Symbols of the lowest unipotent grade plus the central
        cocharacter symbols, every twist."""
        rs = self.alg.rs
        h = self.alg.h
        out = []
        for s in self.symbols:
            if s.kind == "root" and rs.class_index(s.key) == 1:
                out.append(s)
            elif s.kind == "torus" and s.key[0] == "central":
                out.append(s)
        return out

    def _lie_closure(self, seed: list[BasisSymbol]) -> FpEchelon:
        """Span of the iterated brackets of the seed inside the reduced Lie
        algebra, as vectors over the symbol basis."""
        D = len(self.symbols)
        ech = FpEchelon(D, self.p)
        frontier: list[dict[int, int]] = []
        for s in seed:
            vec = [0] * D
            vec[self.sym_index[s]] = 1
            if ech.add(vec):
                frontier.append({self.sym_index[s]: 1})
        while frontier:
            new_frontier = []
            for vec_terms in frontier:
                for s in seed:
                    left = self.alg.element({s: 1})
                    right = self.alg.element(
                        {self.symbols[i]: c for i, c in vec_terms.items()}
                    )
                    br = self.alg.bracket(left, right)
                    if br.is_zero():
                        continue
                    vec = [0] * D
                    terms = {}
                    for sym, c in br.terms.items():
                        vec[self.sym_index[sym]] = c
                        terms[self.sym_index[sym]] = c
                    if ech.add(vec):
                        new_frontier.append(terms)
            frontier = new_frontier
        return ech

    def minimal_generating_set(self) -> tuple[list[BasisSymbol], dict]:
        """The standard generators with a two-part certificate: bracket
        closure reaches every basis symbol, and no generator is redundant
        (grading forces the lowest slice; central symbols are not reached
        from everything else)."""
        gens = self.standard_generators()
        D = len(self.symbols)
        ech = self._lie_closure(gens)
        if ech.rank != D:
            reached = {self.symbols[p] for p in ech.pivots}
            missing = [s for s in self.symbols if s not in reached][0]
            raise GenerationFailure(f"closure does not reach {missing}")

        h = self.alg.h
        lowest_slice = [s for s in self.symbols if self.alg.grade_num(s) == 1]
        lowest_gens = [s for s in gens if self.alg.grade_num(s) == 1]
        central = [s for s in gens if s.kind == "torus"]
        others = [s for s in self.symbols if s not in central]
        sub = self._lie_closure(others)
        central_reached = []
        for s in central:
            vec = [0] * D
            vec[self.sym_index[s]] = 1
            if sub.contains(vec):
                central_reached.append(s)
        cert = {
            "generators": len(gens),
            "closure_rank": ech.rank,
            "dimension": D,
            "lowest_slice_dim": len(lowest_slice),
            "lowest_slice_generators": len(lowest_gens),
            "lowest_slice_forced": len(lowest_slice) == len(lowest_gens),
            "central_independent": not central_reached,
        }
        if not cert["lowest_slice_forced"] or central_reached:
            raise GenerationFailure(f"minimality certificate failed: {cert}")
        return gens, cert

    # -- commutative quotient -------------------------------------------------------

    def _ideal_slices(self, gens: list[PBWElement], bound_num: int) -> Ideal:
        """Graded slices of the two-sided ideal generated by homogeneous
        elements, built by peeling one generator symbol from the left or
        right at a time.  Row reduction runs on numpy batches."""
        import numpy as np

        from ._fp_linalg import NpEchelon

        ideal = Ideal(generators=gens)
        for g in range(0, bound_num + 1):
            ideal.monomials[g] = self.monomials_of_grade(g)
        mono_index = {
            g: {w: k for k, w in enumerate(ws)} for g, ws in ideal.monomials.items()
        }
        basis_elems: dict[int, list[PBWElement]] = {}
        for g in range(0, bound_num + 1):
            width = len(ideal.monomials[g])
            ech = NpEchelon(width, self.p)
            elems: list[PBWElement] = []
            pending: list[PBWElement] = []

            def vec_of(x: PBWElement):
                vec = np.zeros(width, dtype=np.int16)
                for w, c in x.terms.items():
                    vec[mono_index[g][w]] = c
                return vec

            def flush():
                if not pending:
                    return
                before = ech.rank
                batch = np.stack([vec_of(x) for x in pending])
                added = ech.add_batch(batch)
                if added:
                    # recover which elements grew the rank, one at a time
                    if added == len(pending):
                        elems.extend(pending)
                    else:
                        probe = NpEchelon(width, self.p)
                        probe.register_echelon_rows(
                            ech.rows[:before].copy(), list(ech.pivots[:before])
                        )
                        for x in pending:
                            if probe.add_batch(vec_of(x).reshape(1, -1)):
                                elems.append(x)
                pending.clear()

            for gen in gens:
                if next(iter(gen.grades())) == g:
                    pending.append(gen)
            for i in range(len(self.symbols)):
                gi = self.grades[i]
                if g - gi < 0:
                    continue
                s = PBWElement(self, {(i,): 1})
                for elem in basis_elems.get(g - gi, []):
                    x = s * elem
                    if not x.is_zero():
                        pending.append(x)
                    y = elem * s
                    if not y.is_zero():
                        pending.append(y)
                    if len(pending) >= 256:
                        flush()
            flush()
            ideal.slices[g] = ech
            basis_elems[g] = elems
        return ideal

    def commutator_ideal(self, bound_num: int) -> Ideal:
        """The two-sided ideal generated by all commutators, slice by slice
        up to the grade bound."""
        gens = []
        n = len(self.symbols)
        for i in range(n):
            for j in range(i + 1, n):
                corr = self._bracket_ix(i, j)
                if corr:
                    gens.append(PBWElement(self, {(k,): c for k, c in corr.items()}))
        return self._ideal_slices(gens, bound_num)

    def commutative_quotient(self, bound_num: int | None = None) -> dict:
        """Polynomial generators of the largest commutative quotient with
        per-grade dimension checks against the free commutative count."""
        h = self.alg.h
        if bound_num is None:
            # default bound: two full units of grade, trimmed when the top
            # slices get too wide to row-reduce comfortably
            bound_num = 2 * h
            while bound_num > h + 2 and self.hilbert_coefficient(bound_num) > 1200:
                bound_num -= 1
        ideal = self.commutator_ideal(bound_num)
        mono_index = {
            g: {w: k for k, w in enumerate(ws)} for g, ws in ideal.monomials.items()
        }

        survivors, killed = [], []
        for i, s in enumerate(self.symbols):
            g = self.grades[i]
            vec = [0] * len(ideal.monomials[g])
            vec[mono_index[g][(i,)]] = 1
            (killed if ideal.slices[g].contains(vec) else survivors).append(s)

        expected = set(self.standard_generators())
        if set(survivors) != expected:
            raise QuotientMismatch(
                f"surviving generators {survivors} differ from the lowest-grade set"
            )

        # the killed symbols must regenerate the whole ideal, slice by slice
        regen = self._ideal_slices([self.generator(s) for s in killed], bound_num)

        survivor_grades = [self.alg.grade_num(s) for s in survivors]
        report = {
            "bound_num": bound_num,
            "h": h,
            "survivors": [
                {"kind": s.kind, "key": list(s.key) if s.kind == "root" else list(s.key),
                 "twist": s.twist}
                for s in sorted(survivors, key=self.alg.symbol_sort_key)
            ],
            "generator_count": len(survivors),
            "grades": {},
        }
        for g in range(0, bound_num + 1):
            total = len(ideal.monomials[g])
            jdim = ideal.dim(g)
            free = _multiset_count(survivor_grades, g)
            if total - jdim != free:
                raise QuotientMismatch(
                    f"quotient dimension {total - jdim} at grade {g}/{h} does not "
                    f"match the free commutative count {free}"
                )
            if regen.dim(g) != jdim:
                raise QuotientMismatch(
                    f"killed symbols generate dimension {regen.dim(g)} at grade "
                    f"{g}/{h}, ideal has {jdim}"
                )
            report["grades"][g] = {"algebra": total, "ideal": jdim, "quotient": free}
        return report


def _multiset_count(grades: list[int], target: int) -> int:
    """Number of multisets of the given grades summing to the target."""
    coeffs = [1] + [0] * target
    for g in grades:
        for k in range(g, target + 1):
            coeffs[k] += coeffs[k - g]
    return coeffs[target]
