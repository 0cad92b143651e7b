"""Finite-quotient models of the completed group algebra: finite p-groups,
augmentation-ideal powers by exact row reduction over F_p, the ordered-basis
monomial filtration, and the comparison between the two.

Membership claims about the profinite algebra are checked through their
images in finite quotients; a failed membership refutes, a passed one is a
certified necessary condition.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from . import _matrices as mx
from ._fp_linalg import EchelonView, FullSpace, NpEchelon, _dtype_for
from .errors import (
    GroupTooLarge,
    MembershipFailure,
    PrecisionExceeded,
    PropertyViolation,
)
from .iwahori_group import (
    Grade,
    IwahoriElement,
    identity_element,
    multiply,
    unipotent_element,
)
from .padic_ring import RingSpec, inv_unit, teichmuller
from .root_system import RootSystem

DEFAULT_GROUP_CAP = 5**6
ENV_CAP = "IWAHORI_GR_GROUP_CAP"


def group_cap() -> int:
    return int(os.environ.get(ENV_CAP, DEFAULT_GROUP_CAP))


# ---------------------------------------------------------------------------
# finite groups
# ---------------------------------------------------------------------------

class FiniteQuotientGroup:
    """A finite p-group with indexed elements and a multiplication callable
    on canonical representatives."""

    def __init__(self, name, elements, mult, identity, generators,
                 basis=None, h=1, meta=None):
        self.name = name
        self.elements = list(elements)
        self.mult_raw = mult
        self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate canonical representatives")
        self.identity = self.index[identity]
        self.generators = [self.index[g] for g in generators]
        # ordered basis: (element index, valuation numerator) pairs
        self.basis = [(self.index[g], w) for g, w in (basis or [])]
        self.h = h
        self.meta = meta or {}
        self._right_perm_cache: dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def mult_idx(self, i: int, j: int) -> int:
        return self.index[self.mult_raw(self.elements[i], self.elements[j])]

    def inv_idx(self, i: int) -> int:
        prev = self.identity
        cur = i
        while cur != self.identity:
            prev = cur
            cur = self.mult_idx(cur, i)
        return prev

    def order_of(self, i: int) -> int:
        n = 1
        cur = i
        while cur != self.identity:
            cur = self.mult_idx(cur, i)
            n += 1
        return n

    def right_perm(self, t: int) -> np.ndarray:
        """Permutation sending index(g) to index(g*t)."""
        if t not in self._right_perm_cache:
            te = self.elements[t]
            perm = np.empty(len(self.elements), dtype=np.int64)
            for i, g in enumerate(self.elements):
                perm[i] = self.index[self.mult_raw(g, te)]
            self._right_perm_cache[t] = perm
        return self._right_perm_cache[t]

    def vector_of(self, terms: dict[int, int]) -> np.ndarray:
        v = np.zeros(len(self.elements), dtype=_dtype_for(_group_p(self)))
        for i, c in terms.items():
            v[i] = c
        return v


class GroupAlgebraElement:
    """Sparse group-algebra element with convolution arithmetic."""

    __slots__ = ("G", "terms")

    def __init__(self, G: FiniteQuotientGroup, terms=None):
        self.G = G
        self.terms: dict[int, int] = {}
        p = _group_p(G)
        for i, c in (terms or {}).items():
            c %= p
            if c:
                self.terms[i] = c

    def __add__(self, other):
        out = dict(self.terms)
        p = _group_p(self.G)
        for i, c in other.terms.items():
            v = (out.get(i, 0) + c) % p
            if v:
                out[i] = v
            elif i in out:
                del out[i]
        return GroupAlgebraElement(self.G, out)

    def __sub__(self, other):
        p = _group_p(self.G)
        return self + other.scale(p - 1)

    def scale(self, c):
        return GroupAlgebraElement(self.G, {i: v * c for i, v in self.terms.items()})

    def __mul__(self, other):
        out: dict[int, int] = {}
        p = _group_p(self.G)
        for i, c in self.terms.items():
            for j, d in other.terms.items():
                k = self.G.mult_idx(i, j)
                v = (out.get(k, 0) + c * d) % p
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return GroupAlgebraElement(self.G, out)

    def vector(self) -> np.ndarray:
        return self.G.vector_of(self.terms)

    def is_zero(self) -> bool:
        return not self.terms


def _group_p(G: FiniteQuotientGroup) -> int:
    return G.meta["p"]


def group_unit(G, i: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(G, {i: 1})


def shifted_unit(G, i: int) -> GroupAlgebraElement:
    """The element g - 1."""
    if i == G.identity:
        return GroupAlgebraElement(G, {})
    p = _group_p(G)
    return GroupAlgebraElement(G, {i: 1, G.identity: p - 1})


# -- stock models -------------------------------------------------------------

def cyclic_group(p: int, n: int = 1) -> FiniteQuotientGroup:
    size = p**n
    return FiniteQuotientGroup(
        f"C_{size}",
        range(size),
        lambda a, b: (a + b) % size,
        0,
        [1],
        meta={"p": p},
    )


def elementary_abelian(p: int, k: int) -> FiniteQuotientGroup:
    elems = list(itertools.product(range(p), repeat=k))
    return FiniteQuotientGroup(
        "x".join([f"C_{p}"] * k),
        elems,
        lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
        (0,) * k,
        [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)],
        meta={"p": p},
    )


def heisenberg_group(p: int) -> FiniteQuotientGroup:
    """Upper unitriangular 3x3 matrices mod p, as abstract triples."""
    elems = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def mult(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return FiniteQuotientGroup(
        f"Heis_{p}", elems, mult, (0, 0, 0), [(1, 0, 0), (0, 1, 0)], meta={"p": p}
    )


# -- Iwahori quotients ---------------------------------------------------------

@dataclass
class _Slot:
    kind: str          # "neg", "pos", "coroot", "central"
    key: tuple         # root coordinates or a cocharacter label
    exponent: int      # coordinate known mod p^exponent
    min_val: int       # valuation floor (1 for neg and torus, 0 for pos)


def _coord_values(spec: RingSpec, slot: _Slot):
    p = spec.p
    step = p**slot.min_val
    per_coeff = list(range(0, p**slot.exponent, step))
    return list(itertools.product(per_coeff, repeat=spec.f))


def iwahori_quotient(
    rs: RootSystem,
    spec: RingSpec,
    cut: Grade | None = None,
    d_Z: int = 0,
    kill_central: tuple = (),
    check_basis: bool = True,
    size_cap: int | None = None,
) -> FiniteQuotientGroup:
    """The image of the pro-p Iwahori subgroup at precision N, divided by
    the open filtration subgroup just above the cut and optionally by
    central coordinate subgroups (verified central at build time)."""
    h = rs.coxeter_number()
    N = spec.N
    if cut is not None:
        assert cut.h == h
        n0, k0 = divmod(cut.num, h)

    slots: list[_Slot] = []
    for root in rs.roots:
        i = rs.class_index(root)
        positive = sum(root) > 0
        if cut is None:
            t = N
        elif k0 == 0:
            t = n0 + (0 if positive else 1)
        else:
            t = (n0 + 1 if i <= k0 else n0) + (0 if positive else 1)
        e = min(t, N)
        mv = 0 if positive else 1
        if e > mv:
            slots.append(_Slot("pos" if positive else "neg", root, e, mv))
    torus_t = N if cut is None else min(n0 + 1, N)
    for i in range(rs.rank):
        if torus_t > 1:
            slots.append(_Slot("coroot", ("coroot", i), torus_t, 1))
    for j in range(d_Z):
        if torus_t > 1:
            slots.append(_Slot("central", ("central", j), torus_t, 1))

    kill = set(kill_central)
    killed_slots = [s for s in slots if s.kind in ("pos", "neg") and s.key in kill]
    slots = [s for s in slots if s not in killed_slots]

    cap = group_cap() if size_cap is None else min(size_cap, group_cap())
    size = 1
    for s in slots:
        size *= (spec.p ** (s.exponent - s.min_val)) ** spec.f
    if size > cap:
        raise GroupTooLarge(f"quotient would have {size} elements, cap {cap}")

    def canonical(e: IwahoriElement) -> tuple:
        out = []
        for s in slots:
            if s.kind == "pos":
                x = e.pos.get(s.key)
            elif s.kind == "neg":
                x = e.neg.get(s.key)
            else:
                u = e.torus.get(s.key)
                x = None if u is None else u - spec.one()
            if x is None:
                out.append((0,) * spec.f)
            else:
                mod = spec.p**s.exponent
                out.append(tuple(c % mod for c in x.coeffs))
        return tuple(out)

    def lift(rep: tuple) -> IwahoriElement:
        e = identity_element(rs, spec)
        for s, coeffs in zip(slots, rep):
            if not any(coeffs):
                continue
            x = spec.from_coeffs(list(coeffs))
            if s.kind == "pos":
                e.pos[s.key] = x
            elif s.kind == "neg":
                e.neg[s.key] = x
            else:
                e.torus[s.key] = spec.one() + x
        return e

    def mult(a: tuple, b: tuple) -> tuple:
        return canonical(multiply(lift(a), lift(b)))

    elements = [tuple(combo) for combo in itertools.product(*(_coord_values(spec, s) for s in slots))]
    identity = tuple(((0,) * spec.f,) * len(slots))
    # the identity goes last so the rows g - 1 are born in echelon form
    elements = [g for g in elements if g != identity] + [identity]

    # graded representatives that survive the quotient
    basis, gen_elements = [], []
    for s in slots:
        for r in range(spec.f):
            tw = teichmuller(r, spec)
            if s.kind == "pos":
                e = unipotent_element(rs, spec, s.key, tw)
                w = rs.class_index(s.key)
            elif s.kind == "neg":
                e = unipotent_element(rs, spec, s.key, spec.from_int(spec.p) * tw)
                w = rs.class_index(s.key)
            else:
                e = IwahoriElement(
                    rs, spec, torus={s.key: spec.one() + spec.from_int(spec.p) * tw}
                )
                w = h
            rep = canonical(e)
            if rep != identity:
                basis.append((rep, w))
                gen_elements.append(rep)

    # killed coordinates must generate central subgroups of the quotient
    for s in killed_slots:
        for coeffs in _coord_values(spec, s):
            if not any(coeffs):
                continue
            x = spec.from_coeffs(list(coeffs))
            z = unipotent_element(rs, spec, s.key, x)
            for g in gen_elements:
                left = canonical(multiply(z, lift(g)))
                right = canonical(multiply(lift(g), z))
                if left != right:
                    raise MembershipFailure(
                        f"coordinate at {s.key} is not central; cannot quotient by it"
                    )

    max_grade_num = 0
    for s in slots:
        if s.kind == "pos":
            g = (s.exponent - 1) * h + rs.class_index(s.key)
        elif s.kind == "neg":
            g = (s.exponent - 2) * h + rs.class_index(s.key)
        else:
            g = (s.exponent - 1) * h
        max_grade_num = max(max_grade_num, g)

    G = FiniteQuotientGroup(
        f"I({rs.name},p{spec.p},f{spec.f},N{N})"
        + (f"/({cut.num}/{h})+" if cut is not None else "")
        + (f"-z{len(kill)}" if kill else "")
        + (f"xZ^{d_Z}" if d_Z else ""),
        elements,
        mult,
        identity,
        gen_elements,
        basis=basis,
        h=h,
        meta={
            "p": spec.p,
            "rs": rs,
            "spec": spec,
            "d_Z": d_Z,
            "cut": None if cut is None else cut.num,
            "canonical": canonical,
            "lift": lift,
            "max_grade_num": max_grade_num,
        },
    )

    if check_basis:
        orders = [G.order_of(i) for i, _ in G.basis]
        prod = 1
        for o in orders:
            prod *= o
        if prod != len(G):
            raise PrecisionExceeded(
                f"ordered basis orders {orders} do not multiply to the group order"
            )
        G.meta["basis_orders"] = orders
    return G


def shrink_to_budget(
    rs: RootSystem, spec: RingSpec, d_Z: int = 0, budget: int | None = None
) -> FiniteQuotientGroup:
    """The deepest quotient of the Iwahori image that fits the size budget:
    first the full congruence quotient, then filtration cuts, then central
    top-slice coordinates divided out one at a time."""
    budget = budget if budget is not None else group_cap()
    try:
        return iwahori_quotient(rs, spec, d_Z=d_Z, size_cap=budget)
    except GroupTooLarge:
        pass
    h = rs.coxeter_number()
    for num in range(spec.N * h - 1, 0, -1):
        cut = Grade(num, h)
        try:
            return iwahori_quotient(rs, spec, cut=cut, d_Z=d_Z, size_cap=budget)
        except GroupTooLarge:
            pass
        n0, k0 = divmod(num, h)
        if n0 == 0:
            # the top slice is central; its coordinates can be divided out,
            # negative roots first
            candidates = sorted(
                (r for r in rs.roots if rs.class_index(r) == k0),
                key=lambda r: (0 if sum(r) < 0 else 1, rs.index[r]),
            )
            kills: list = []
            for r in candidates[:-1]:
                kills.append(r)
                try:
                    return iwahori_quotient(
                        rs, spec, cut=cut, d_Z=d_Z,
                        kill_central=tuple(kills), size_cap=budget,
                    )
                except GroupTooLarge:
                    continue
    raise GroupTooLarge(
        f"no quotient of {rs.name} at precision {spec.N} fits the budget {budget}"
    )


# ---------------------------------------------------------------------------
# augmentation ladder
# ---------------------------------------------------------------------------

@dataclass
class FiltrationLadder:
    """Descending chain of subspaces of the group algebra, keyed by integer
    powers (augmentation) or by grade numerators (weighted monomials)."""

    group: FiniteQuotientGroup
    kind: str
    levels: dict = field(default_factory=dict)

    def dim(self, key) -> int:
        return self.levels[key].rank

    def member(self, vec: np.ndarray, key) -> bool:
        return self.levels[key].contains(vec)

    def membership_degree(self, vec: np.ndarray):
        """Largest key whose level contains the vector."""
        best = None
        for key in sorted(self.levels):
            if self.member(vec, key):
                best = key
            else:
                break
        return best


def augmentation_powers(G: FiniteQuotientGroup, n_max: int) -> FiltrationLadder:
    """Powers of the augmentation ideal: each step multiplies the previous
    basis by the generators minus one, then row reduces."""
    if len(G) > group_cap():
        raise GroupTooLarge(f"group of order {len(G)} exceeds cap {group_cap()}")
    p = _group_p(G)
    width = len(G)
    ladder = FiltrationLadder(G, "augmentation")
    ladder.levels[0] = FullSpace(width)
    if n_max == 0:
        return ladder

    m1 = NpEchelon(width, p)
    rows = np.zeros((width - 1, width), dtype=m1.dtype)
    for i in range(width - 1):
        rows[i, i] = 1
        rows[i, width - 1] = p - 1
    m1.register_echelon_rows(rows, list(range(width - 1)))
    ladder.levels[1] = m1

    perms = [G.right_perm(t) for t in G.generators]
    prev = m1
    for n in range(2, n_max + 1):
        if prev.rank == 0:
            ladder.levels[n] = prev
            continue
        nxt = NpEchelon(width, p, capacity=prev.rank)
        base = prev.rows
        for perm in perms:
            shifted = np.zeros_like(base)
            shifted[:, perm] = base
            nxt.add_batch((shifted - base) % p)
        ladder.levels[n] = nxt
        prev = nxt
    return ladder


def quotient_dimensions(ladder: FiltrationLadder) -> list[int]:
    keys = sorted(k for k in ladder.levels if isinstance(k, int))
    return [ladder.dim(keys[i]) - ladder.dim(keys[i + 1]) for i in range(len(keys) - 1)]


# ---------------------------------------------------------------------------
# arithmetic congruences in the group ring
# ---------------------------------------------------------------------------

def group_ring_congruence_suite(
    G: FiniteQuotientGroup, samples: int = 200, seed: int = 0,
    n_max: int | None = None, ladder: FiltrationLadder | None = None,
) -> dict:
    """Elementary congruences between group elements and augmentation powers
    on random samples, with ladder-certified membership degrees."""
    import random

    p = _group_p(G)
    if n_max is None:
        n_max = 2 * p + 2
    if ladder is None:
        ladder = augmentation_powers(G, n_max)
    else:
        n_max = max(k for k in ladder.levels if isinstance(k, int))
    rng = random.Random(seed)
    checked = {k: 0 for k in ("p-power", "triple", "product", "inverse", "commutator")}
    clamped = 0

    def deg(i: int) -> int:
        if i == G.identity:
            return n_max
        return ladder.membership_degree(shifted_unit(G, i).vector())

    def expect(vec: np.ndarray, level: int, tag: str, witness):
        nonlocal clamped
        lvl = min(level, n_max)
        if lvl < level:
            clamped += 1
        if not ladder.member(vec, lvl):
            raise PropertyViolation(f"{tag} congruence fails at level {lvl} on {witness}")
        checked[tag] += 1

    n_elems = len(G)
    for _ in range(samples):
        a = rng.randrange(n_elems)
        b = rng.randrange(n_elems)
        c = rng.randrange(n_elems)
        i, j, k = deg(a), deg(b), deg(c)

        gp = a
        for _ in range(p - 1):
            gp = G.mult_idx(gp, a)
        expect(shifted_unit(G, gp).vector(), p, "p-power", a)

        ab = G.mult_idx(a, b)
        bc = G.mult_idx(b, c)
        ac = G.mult_idx(a, c)
        abc = G.mult_idx(ab, c)
        lhs = shifted_unit(G, abc)
        rhs = (
            shifted_unit(G, ab) + shifted_unit(G, bc) + shifted_unit(G, ac)
            - shifted_unit(G, a) - shifted_unit(G, b) - shifted_unit(G, c)
        )
        expect((lhs - rhs).vector(), i + j + k, "triple", (a, b, c))

        ba = G.mult_idx(b, a)
        rhs2 = shifted_unit(G, a) + shifted_unit(G, b)
        expect((shifted_unit(G, ab) - rhs2).vector(), i + j, "product", (a, b))
        expect((shifted_unit(G, ba) - rhs2).vector(), i + j, "product", (b, a))

        ainv = G.inv_idx(a)
        expect((shifted_unit(G, ainv) + shifted_unit(G, a)).vector(), 2 * i, "inverse", a)

        binv = G.inv_idx(b)
        comm = G.mult_idx(G.mult_idx(b, a), G.mult_idx(binv, ainv))
        expect(shifted_unit(G, comm).vector(), i + j, "commutator", (b, a))
        comm2 = G.mult_idx(G.mult_idx(a, b), G.mult_idx(ainv, binv))
        expect(shifted_unit(G, comm2).vector(), i + j, "commutator", (a, b))

    return {"checked": checked, "clamped": clamped, "samples": samples, "n_max": n_max}


# ---------------------------------------------------------------------------
# ordered-basis monomial filtration and the comparison
# ---------------------------------------------------------------------------

def omega_monomial_filtration(
    G: FiniteQuotientGroup, k_max_num: int | None = None
) -> FiltrationLadder:
    """Spans of the monomials prod (x_i - 1)^{a_i} whose weighted degree
    sum a_i * omega(x_i) reaches each grade threshold; the x_i run over the
    ordered basis of graded representatives."""
    if not G.basis:
        raise PrecisionExceeded("the group carries no ordered basis data")
    p = _group_p(G)
    width = len(G)
    orders = G.meta.get("basis_orders") or [G.order_of(i) for i, _ in G.basis]
    weights = [w for _, w in G.basis]
    if k_max_num is None:
        k_max_num = 2 * max(weights)

    buckets: dict[int, list[tuple]] = {}

    def rec(i, acc, tau):
        if i == len(G.basis):
            if tau > 0:
                buckets.setdefault(tau, []).append(tuple(acc))
            return
        for e in range(orders[i]):
            acc.append(e)
            rec(i + 1, acc, tau + weights[i] * e)
            acc.pop()

    rec(0, [], 0)

    perms = [G.right_perm(i) for i, _ in G.basis]

    dtype = _dtype_for(p)

    def monomial_vector(exps: tuple) -> np.ndarray:
        v = np.zeros(width, dtype=dtype)
        v[G.identity] = 1
        for slot, e in enumerate(exps):
            for _ in range(e):
                shifted = np.zeros_like(v)
                shifted[perms[slot]] = v
                v = (shifted - v) % p
        return v

    ladder = FiltrationLadder(G, "monomial")
    ech = NpEchelon(width, p)
    thresholds = sorted(buckets, reverse=True)
    snapshots: dict[int, EchelonView] = {}
    for tau in thresholds:
        rows = np.stack([monomial_vector(e) for e in buckets[tau]])
        ech.add_batch(rows)
        snapshots[tau] = ech.snapshot()
    for k in range(1, k_max_num + 1):
        eligible = [t for t in thresholds if t >= k]
        if eligible:
            ladder.levels[k] = snapshots[min(eligible)]
        else:
            ladder.levels[k] = NpEchelon(width, p, capacity=0)
    return ladder


def compare_filtrations(
    G: FiniteQuotientGroup,
    k_max_num: int | None = None,
    aug: FiltrationLadder | None = None,
) -> dict:
    """Per-grade comparison: the hk-th augmentation power against the span
    of monomials of weighted degree at least k, plus the central one-unit
    witness separating the two in the reductive case."""
    h = G.h
    if not G.basis:
        raise PrecisionExceeded("the group carries no ordered basis data")
    certifiable = G.meta.get("max_grade_num", max(w for _, w in G.basis))
    if k_max_num is None:
        k_max_num = certifiable
    spec: RingSpec = G.meta["spec"]
    if k_max_num > certifiable:
        raise PrecisionExceeded(
            f"grade {k_max_num}/{h} is beyond what this quotient at precision "
            f"{spec.N} certifies ({certifiable}/{h})"
        )
    mono = omega_monomial_filtration(G, k_max_num)
    if aug is None or any(k not in aug.levels for k in range(1, k_max_num + 1)):
        aug = augmentation_powers(G, k_max_num)

    p = _group_p(G)
    report = {"group": G.name, "order": len(G), "h": h, "levels": [], "all_equal": True}
    for k in range(1, k_max_num + 1):
        m_side = aug.levels[k]
        w_side = mono.levels[k]
        equal = m_side.rank == w_side.rank
        if equal and m_side.rank and w_side.rank:
            probe = NpEchelon(len(G), p, capacity=min(len(G), m_side.rank + w_side.rank))
            probe.register_echelon_rows(m_side.rows.copy(), list(m_side.pivots))
            equal = probe.add_batch(w_side.rows.copy()) == 0
        report["levels"].append(
            {
                "k_num": k,
                "grade": f"{k}/{h}",
                "dim_m_power": m_side.rank,
                "dim_weighted": w_side.rank,
                "equal": bool(equal),
            }
        )
        if not equal:
            report["all_equal"] = False

    if G.meta.get("d_Z"):
        rs: RootSystem = G.meta["rs"]
        z = IwahoriElement(
            rs, spec, torus={("central", 0): spec.one() + spec.from_int(spec.p)}
        )
        rep = G.meta["canonical"](z)
        vec = shifted_unit(G, G.index[rep]).vector()
        in_m = aug.levels[1].contains(vec)
        in_m2 = aug.levels[2].contains(vec)
        report["central_witness"] = {
            "in_m": bool(in_m),
            "in_m_squared": bool(in_m2),
            "separates": bool(in_m and not in_m2),
        }
    return report


# ---------------------------------------------------------------------------
# depth memberships for root and coroot elements
# ---------------------------------------------------------------------------

def coroot_commutator_matrix_identity(spec: RingSpec, r: int) -> bool:
    """The exact rank-one identity writing a coroot one-unit as a commutator
    of triangular matrices times p-th powers, at full precision."""
    t = teichmuller(r, spec)
    one = spec.one()
    p = spec.p
    E = mx.sl2_root_matrix(True, t)
    F0 = mx.sl2_root_matrix(False, -spec.from_int(p))
    lhs = mx.mat_mul(
        mx.mat_mul(F0, E, spec),
        mx.mat_mul(
            mx.mat_inv_unipotent_or_torus(F0, spec),
            mx.mat_inv_unipotent_or_torus(E, spec),
            spec,
        ),
        spec,
    )
    unit = one + spec.from_int(p) * t
    H = mx.sl2_torus_matrix(unit)
    L = mx.sl2_root_matrix(False, -(spec.from_int(p) * t * unit))
    U = mx.sl2_root_matrix(True, -(t * t * inv_unit(unit)))
    Lp, Up = L, U
    for _ in range(p - 1):
        Lp = mx.mat_mul(Lp, L, spec)
        Up = mx.mat_mul(Up, U, spec)
    rhs = mx.mat_mul(mx.mat_mul(H, Lp, spec), Up, spec)
    return mx.mat_eq(lhs, rhs)


def depth_membership_suite(
    G: FiniteQuotientGroup, ladder: FiltrationLadder | None = None
) -> dict:
    """Root coordinates of height class k must land in the k-th augmentation
    power, coroot one-units in the h-th; checked through this quotient.
    Trivial images are reported as vacuous rather than as evidence."""
    rs: RootSystem = G.meta["rs"]
    spec: RingSpec = G.meta["spec"]
    h = G.h
    if ladder is None:
        ladder = augmentation_powers(G, h)
    n_top = max(k for k in ladder.levels if isinstance(k, int))
    canonical = G.meta["canonical"]
    report = {"group": G.name, "checks": [], "vacuous": 0, "passed": 0}

    def run(label, e: IwahoriElement, level: int):
        rep = canonical(e)
        if rep == G.elements[G.identity]:
            report["vacuous"] += 1
            report["checks"].append({"what": label, "level": level, "status": "vacuous"})
            return
        vec = shifted_unit(G, G.index[rep]).vector()
        lvl = min(level, n_top)
        if not ladder.member(vec, lvl):
            raise MembershipFailure(f"{label} escapes power {lvl} in {G.name}")
        report["passed"] += 1
        report["checks"].append({"what": label, "level": lvl, "status": "pass"})

    for root in rs.roots:
        k = rs.class_index(root)
        for r in range(spec.f):
            tw = teichmuller(r, spec)
            arg = tw if sum(root) > 0 else spec.from_int(spec.p) * tw
            run(
                f"u[{list(root)}](p^delta xi^{r}) in m^{k}",
                unipotent_element(rs, spec, root, arg),
                k,
            )
    for i in range(rs.rank):
        for r in range(spec.f):
            unit = spec.one() + spec.from_int(spec.p) * teichmuller(r, spec)
            run(
                f"coroot[{i}](1+p xi^{r}) in m^{h}",
                IwahoriElement(rs, spec, torus={("coroot", i): unit}),
                h,
            )
    return report
