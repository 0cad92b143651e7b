"""Irreducible root systems: enumeration, heights, height-mod-h classes,
pairings against coroots, and prime admissibility.

Roots are stored as integer coordinate vectors in the simple-root basis,
so the height of a root is just the sum of its coordinates and all
comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import BadIndex, HighestRoot, UnsupportedType

TYPES = ("A", "B", "C", "D", "E", "F", "G")


def _gram_matrix(type_label: str, rank: int) -> list[list[int]]:
    """Symmetric inner products of the simple roots, scaled so short roots
    have squared length 2."""
    n = rank
    ok = (
        (type_label == "A" and n >= 1)
        or (type_label == "B" and n >= 2)
        or (type_label == "C" and n >= 2)
        or (type_label == "D" and n >= 4)
        or (type_label == "E" and n in (6, 7, 8))
        or (type_label == "F" and n == 4)
        or (type_label == "G" and n == 2)
    )
    if not ok:
        raise UnsupportedType(f"no irreducible system of type {type_label}_{rank}")

    G = [[0] * n for _ in range(n)]

    def edge(i, j, v):
        G[i][j] = v
        G[j][i] = v

    if type_label == "A":
        for i in range(n):
            G[i][i] = 2
        for i in range(n - 1):
            edge(i, i + 1, -1)
    elif type_label == "B":
        # first n-1 simple roots long, last one short
        for i in range(n - 1):
            G[i][i] = 4
        G[n - 1][n - 1] = 2
        for i in range(n - 1):
            edge(i, i + 1, -2)
    elif type_label == "C":
        # first n-1 simple roots short, last one long
        for i in range(n - 1):
            G[i][i] = 2
        G[n - 1][n - 1] = 4
        for i in range(n - 2):
            edge(i, i + 1, -1)
        edge(n - 2, n - 1, -2)
    elif type_label == "D":
        for i in range(n):
            G[i][i] = 2
        for i in range(n - 2):
            edge(i, i + 1, -1)
        edge(n - 3, n - 1, -1)
    elif type_label == "E":
        for i in range(n):
            G[i][i] = 2
        chain = [(0, 2), (2, 3), (3, 4), (4, 5)]
        if n >= 7:
            chain.append((5, 6))
        if n == 8:
            chain.append((6, 7))
        chain.append((1, 3))
        for i, j in chain:
            edge(i, j, -1)
    elif type_label == "F":
        G[0][0] = G[1][1] = 4
        G[2][2] = G[3][3] = 2
        edge(0, 1, -2)
        edge(1, 2, -2)
        edge(2, 3, -1)
    elif type_label == "G":
        G[0][0] = 2
        G[1][1] = 6
        edge(0, 1, -3)
    return G


def _order_key(coords: tuple[int, ...]) -> tuple:
    # height first, then reverse-lexicographic on coordinates; this refinement
    # makes the earliest-supported simple root smallest within a height level
    return (sum(coords), tuple(-c for c in coords))


@dataclass(frozen=True)
class HeightClass:
    """Roots whose height is congruent to k modulo the Coxeter number."""

    k: int
    members: tuple[tuple[int, ...], ...]
    positive: tuple[tuple[int, ...], ...]
    negative: tuple[tuple[int, ...], ...]


@dataclass
class RootSystem:
    type_label: str
    rank: int
    gram: list[list[int]]
    cartan: list[list[int]]          # cartan[i][j] = <alpha_i, alpha_j^vee>
    roots: list[tuple[int, ...]]     # all of Phi in the fixed total order
    positives: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        self.index = {r: i for i, r in enumerate(self.roots)}

    # -- basic queries ------------------------------------------------------

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def simple_root(self, i: int) -> tuple[int, ...]:
        coords = [0] * self.rank
        coords[i] = 1
        return tuple(coords)

    def is_root(self, coords: tuple[int, ...]) -> bool:
        return coords in self.index

    def height(self, root: tuple[int, ...]) -> int:
        return sum(root)

    def is_positive(self, root: tuple[int, ...]) -> bool:
        return sum(root) > 0

    def delta(self, root: tuple[int, ...]) -> int:
        """0 on positive roots, 1 on negative roots."""
        return 0 if sum(root) > 0 else 1

    @property
    def highest_root(self) -> tuple[int, ...]:
        return self.positives[-1]

    def coxeter_number(self) -> int:
        return 1 + sum(self.highest_root)

    def add_roots(self, a, b):
        s = tuple(x + y for x, y in zip(a, b))
        return s if s in self.index else None

    def negate(self, a):
        return tuple(-x for x in a)

    # -- inner products and pairings ----------------------------------------

    def inner(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        return sum(
            a[i] * b[j] * self.gram[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def norm_sq(self, a: tuple[int, ...]) -> int:
        return self.inner(a, a)

    def pairing_with_simple_coroot(self, root: tuple[int, ...], j: int) -> int:
        """<root, alpha_j^vee>"""
        return sum(root[i] * self.cartan[i][j] for i in range(self.rank))

    def coroot_coordinates(self, root: tuple[int, ...]) -> tuple[int, ...]:
        """root^vee as an integer combination of the simple coroots."""
        nn = self.norm_sq(root)
        out = []
        for i in range(self.rank):
            num = root[i] * self.gram[i][i]
            assert num % nn == 0
            out.append(num // nn)
        return tuple(out)

    # -- height classes ------------------------------------------------------

    def class_index(self, root: tuple[int, ...]) -> int:
        """The k in 1..h-1 with ht(root) = k mod h."""
        return sum(root) % self.coxeter_number()

    def height_class(self, k: int) -> HeightClass:
        h = self.coxeter_number()
        if not 1 <= k <= h - 1:
            raise BadIndex(f"class index must lie in 1..{h - 1}, got {k}")
        members = tuple(r for r in self.roots if sum(r) % h == k)
        pos = tuple(r for r in members if sum(r) > 0)
        neg = tuple(r for r in members if sum(r) < 0)
        return HeightClass(k, members, pos, neg)

    # -- root addition -------------------------------------------------------

    def root_addition_partner(self, alpha: tuple[int, ...]) -> tuple[int, ...]:
        """A simple root delta with alpha + delta still a positive root."""
        if not self.is_positive(alpha):
            raise BadIndex("expected a positive root")
        if alpha == self.highest_root:
            raise HighestRoot("the highest root has no addition partner")
        for i in range(self.rank):
            s = self.add_roots(alpha, self.simple_root(i))
            if s is not None:
                return self.simple_root(i)
        raise AssertionError(f"no partner found for {alpha}")

    def negative_root_decomposition(self, alpha: tuple[int, ...]):
        """Write a non-minimal negative root as alpha' + delta with delta
        simple and alpha' still negative."""
        if self.is_positive(alpha):
            raise BadIndex("expected a negative root")
        if alpha == self.negate(self.highest_root):
            raise HighestRoot("the lowest root has no such decomposition")
        delta = self.root_addition_partner(self.negate(alpha))
        alpha_prime = tuple(a - d for a, d in zip(alpha, delta))
        assert alpha_prime in self.index and not self.is_positive(alpha_prime)
        return alpha_prime, delta


def build(type_label: str, rank: int) -> RootSystem:
    """Enumerate the root system by closing the simple roots under root
    strings, using only Cartan-matrix arithmetic."""
    gram = _gram_matrix(type_label, rank)
    n = rank
    cartan = [
        [2 * gram[i][j] // gram[j][j] for j in range(n)] for i in range(n)
    ]
    for i in range(n):
        assert cartan[i][i] == 2

    simple = []
    for i in range(n):
        coords = [0] * n
        coords[i] = 1
        simple.append(tuple(coords))

    pos: set[tuple[int, ...]] = set(simple)
    all_roots: set[tuple[int, ...]] = set(simple) | {
        tuple(-c for c in r) for r in simple
    }

    def pair_simple(beta, j):
        return sum(beta[i] * cartan[i][j] for i in range(n))

    height = 1
    current = list(simple)
    while current:
        nxt = []
        for beta in current:
            for j, alpha in enumerate(simple):
                if beta == alpha:
                    continue
                m = 0
                probe = tuple(b - a for b, a in zip(beta, alpha))
                while probe in all_roots:
                    m += 1
                    probe = tuple(b - a for b, a in zip(probe, alpha))
                q = m - pair_simple(beta, j)
                if q >= 1:
                    s = tuple(b + a for b, a in zip(beta, alpha))
                    if s not in pos:
                        pos.add(s)
                        all_roots.add(s)
                        all_roots.add(tuple(-c for c in s))
                        nxt.append(s)
        height += 1
        current = nxt

    positives = sorted(pos, key=_order_key)
    roots = sorted(all_roots, key=_order_key)
    return RootSystem(type_label, rank, gram, cartan, roots, positives)


@lru_cache(maxsize=None)
def build_cached(type_label: str, rank: int) -> RootSystem:
    return build(type_label, rank)


def parse_type(text: str) -> tuple[str, int]:
    """Parse labels like 'A2' or 'G2' into (letter, rank)."""
    text = text.strip()
    if not text or text[0].upper() not in TYPES:
        raise UnsupportedType(f"cannot parse root system label {text!r}")
    try:
        rank = int(text[1:])
    except ValueError:
        raise UnsupportedType(f"cannot parse root system label {text!r}") from None
    return text[0].upper(), rank


def coxeter_number(rs: RootSystem) -> int:
    return rs.coxeter_number()


def cartan_determinant(rs: RootSystem) -> int:
    """Exact determinant of the Cartan matrix."""
    n = rs.rank
    m = [[Fraction(rs.cartan[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for row in range(col, n):
            if m[row][col] != 0:
                pivot = row
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for row in range(col + 1, n):
            factor = m[row][col] * inv
            if factor:
                for j in range(col, n):
                    m[row][j] -= factor * m[col][j]
    assert det.denominator == 1
    return int(det)


def check_admissible(rs: RootSystem, p: int) -> bool:
    """True when p exceeds the Coxeter number plus one.  Such primes are
    automatically coprime to the Cartan determinant, which is asserted."""
    h = rs.coxeter_number()
    admissible = p > h + 1
    if admissible:
        from math import gcd

        assert gcd(cartan_determinant(rs), p) == 1
    return admissible


def smallest_admissible_prime(rs: RootSystem) -> int:
    from .padic_ring import is_prime

    p = rs.coxeter_number() + 2
    while not is_prime(p):
        p += 1
    return p


# ---------------------------------------------------------------------------
# cocharacter lattice
# ---------------------------------------------------------------------------

Cocharacter = tuple[str, int]  # ("coroot", i) or ("central", j)


@dataclass(frozen=True)
class CocharacterLattice:
    """Basis of the cocharacter lattice: the simple coroots together with
    d_Z central cocharacters pairing to zero with every root."""

    rs: RootSystem
    d_Z: int

    @property
    def rank_T(self) -> int:
        return self.rs.rank + self.d_Z

    def basis(self) -> list[Cocharacter]:
        out: list[Cocharacter] = [("coroot", i) for i in range(self.rs.rank)]
        out += [("central", j) for j in range(self.d_Z)]
        return out

    def central_basis(self) -> list[Cocharacter]:
        return [("central", j) for j in range(self.d_Z)]

    def pairing(self, root: tuple[int, ...], lam: Cocharacter) -> int:
        kind, idx = lam
        if kind == "central":
            return 0
        return self.rs.pairing_with_simple_coroot(root, idx)


def pairing(rs: RootSystem, root: tuple[int, ...], lam: Cocharacter) -> int:
    kind, idx = lam
    if kind == "central":
        return 0
    return rs.pairing_with_simple_coroot(root, idx)
