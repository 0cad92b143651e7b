"""Exact arithmetic in O/p^N for an unramified extension of the p-adic numbers.

Elements live in (Z/p^N)[x]/(modulus) where the modulus is a monic lift of
an irreducible degree-f polynomial over F_p.  Everything is plain integer
arithmetic, no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadDegree, NonPrime, NotAUnit

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, index = degree)
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_rem_mod_p(a: list[int], m: list[int], p: int) -> list[int]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _poly_trim(a)


def _monic_polys(p: int, degree: int):
    """All monic polynomials of the given degree over F_p, lexicographically
    by coefficient tuple (constant term varies fastest)."""
    def rec(coeffs, k):
        if k == degree:
            yield coeffs + [1]
            return
        for c in range(p):
            yield from rec(coeffs + [c], k + 1)
    yield from rec([], 0)


def _is_irreducible_mod_p(poly: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree up to deg/2."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for q in _monic_polys(p, d):
            if not _poly_rem_mod_p(poly, q, p):
                return False
    return True


@lru_cache(maxsize=None)
def _find_modulus(p: int, f: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree f over F_p, in
    lexicographic coefficient order.  Deterministic, so the generator of the
    residue field is reproducible across runs."""
    for cand in _monic_polys(p, f):
        if _is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise BadDegree(f"no irreducible polynomial of degree {f} mod {p}")


# ---------------------------------------------------------------------------
# ring spec and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    """Parameters of the truncated ring (Z/p^N)[x]/(modulus)."""

    p: int
    f: int
    N: int
    modulus: tuple[int, ...]  # length f+1, monic, coefficients in [0, p)

    @property
    def pN(self) -> int:
        return self.p ** self.N

    def zero(self) -> TruncatedUnramified:
        return TruncatedUnramified((0,) * self.f, self)

    def one(self) -> TruncatedUnramified:
        return self.from_int(1)

    def from_int(self, n: int) -> TruncatedUnramified:
        return TruncatedUnramified((n % self.pN,) + (0,) * (self.f - 1), self)

    def from_coeffs(self, coeffs) -> TruncatedUnramified:
        cs = [c % self.pN for c in coeffs]
        if len(cs) > self.f:
            raise BadDegree(f"expected at most {self.f} coefficients")
        cs += [0] * (self.f - len(cs))
        return TruncatedUnramified(tuple(cs), self)

    def xi(self) -> TruncatedUnramified:
        """The class of x, reducing to the fixed generator of the residue
        field."""
        if self.f == 1:
            return self.zero()
        return self.from_coeffs([0, 1])

    def elements(self):
        """Iterate over the whole ring (desk-scale sizes only)."""
        def rec(prefix):
            if len(prefix) == self.f:
                yield TruncatedUnramified(tuple(prefix), self)
                return
            for c in range(self.pN):
                yield from rec(prefix + [c])
        yield from rec([])


def ring_make(p: int, f: int, N: int) -> RingSpec:
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if f < 1:
        raise BadDegree(f"extension degree must be >= 1, got {f}")
    if N < 1:
        raise BadDegree(f"truncation level must be >= 1, got {N}")
    return RingSpec(p, f, N, _find_modulus(p, f))


class TruncatedUnramified:
    """Element of O/p^N, stored as f coefficients in [0, p^N)."""

    __slots__ = ("coeffs", "spec")

    def __init__(self, coeffs: tuple[int, ...], spec: RingSpec):
        self.coeffs = coeffs
        self.spec = spec

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedUnramified)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.coeffs, self.spec.p, self.spec.f, self.spec.N))

    def __repr__(self) -> str:
        return f"TruncatedUnramified({list(self.coeffs)} mod {self.spec.p}^{self.spec.N})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: TruncatedUnramified) -> TruncatedUnramified:
        pN = self.spec.pN
        return TruncatedUnramified(
            tuple((a + b) % pN for a, b in zip(self.coeffs, other.coeffs)), self.spec
        )

    def __sub__(self, other: TruncatedUnramified) -> TruncatedUnramified:
        pN = self.spec.pN
        return TruncatedUnramified(
            tuple((a - b) % pN for a, b in zip(self.coeffs, other.coeffs)), self.spec
        )

    def __neg__(self) -> TruncatedUnramified:
        pN = self.spec.pN
        return TruncatedUnramified(tuple((-a) % pN for a in self.coeffs), self.spec)

    def __mul__(self, other) -> TruncatedUnramified:
        if isinstance(other, int):
            pN = self.spec.pN
            return TruncatedUnramified(
                tuple((a * other) % pN for a in self.coeffs), self.spec
            )
        spec = self.spec
        pN = spec.pN
        f = spec.f
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(other.coeffs):
                    prod[i + j] = (prod[i + j] + ai * bj) % pN
        # reduce by the monic modulus
        for d in range(2 * f - 2, f - 1, -1):
            lead = prod[d]
            if lead:
                shift = d - f
                for i in range(f + 1):
                    prod[shift + i] = (prod[shift + i] - lead * spec.modulus[i]) % pN
        return TruncatedUnramified(tuple(prod[:f]), spec)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncatedUnramified:
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_dict(self) -> dict:
        return {
            "p": self.spec.p,
            "f": self.spec.f,
            "N": self.spec.N,
            "coeffs": list(self.coeffs),
        }


def element_from_dict(d: dict) -> TruncatedUnramified:
    spec = ring_make(d["p"], d["f"], d["N"])
    return spec.from_coeffs(d["coeffs"])


def valuation(a: TruncatedUnramified):
    """Largest v with a in p^v * (ring); INF when a vanishes at this
    precision, meaning only that the valuation is >= N."""
    if a.is_zero():
        return INF
    spec = a.spec
    v = 0
    coeffs = a.coeffs
    while v < spec.N:
        if any(c % (spec.p ** (v + 1)) for c in coeffs):
            return v
        v += 1
    return INF


def divide_by_p(a: TruncatedUnramified, k: int = 1) -> TruncatedUnramified:
    """Exact division by p^k; requires valuation >= k.  The result is only
    determined mod p^(N-k), so top digits are set to 0."""
    spec = a.spec
    pk = spec.p ** k
    if any(c % pk for c in a.coeffs):
        raise ValueError("not divisible by p^k")
    cut = spec.p ** (spec.N - k)
    return TruncatedUnramified(tuple((c // pk) % cut for c in a.coeffs), spec)


def inv_unit(a: TruncatedUnramified) -> TruncatedUnramified:
    """Inverse of a unit, by Fermat inversion mod p then Newton lifting."""
    if valuation(a) != 0:
        raise NotAUnit(f"{a!r} has positive valuation")
    spec = a.spec
    # inverse of the residue: b^(q-2) with q = p^f
    p_part = RingSpec(spec.p, spec.f, 1, spec.modulus)
    res = TruncatedUnramified(tuple(c % spec.p for c in a.coeffs), p_part)
    z0 = res ** (spec.p ** spec.f - 2)
    z = spec.from_coeffs(z0.coeffs)
    two = spec.from_int(2)
    # each Newton step doubles the precision of a*z = 1
    steps = max(1, math.ceil(math.log2(spec.N))) if spec.N > 1 else 0
    for _ in range(steps):
        z = z * (two - a * z)
    assert (a * z) == spec.one()
    return z


def teichmuller_lift(a: TruncatedUnramified) -> TruncatedUnramified:
    """The unique root-of-unity (or zero) lift congruent to a mod p,
    computed by iterating b -> b^(p^f) to a fixed point."""
    spec = a.spec
    q = spec.p ** spec.f
    b = a
    for _ in range(spec.N + 1):
        nxt = b ** q
        if nxt == b:
            return b
        b = nxt
    raise AssertionError("Teichmuller iteration failed to stabilize")


def teichmuller(r: int, spec: RingSpec) -> TruncatedUnramified:
    """The lift of xi^r, where xi is the fixed residue-field generator."""
    if not 0 <= r <= spec.f - 1:
        raise BadDegree(f"twist exponent {r} out of range [0, {spec.f - 1}]")
    if r == 0:
        return spec.one()
    return teichmuller_lift(spec.xi() ** r)


# ---------------------------------------------------------------------------
# residue field
# ---------------------------------------------------------------------------

class Residue:
    """Element of the residue field F_{p^f}, as f coefficients mod p."""

    __slots__ = ("coeffs", "spec")

    def __init__(self, coeffs: tuple[int, ...], spec: RingSpec):
        self.coeffs = tuple(c % spec.p for c in coeffs)
        self.spec = spec

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Residue)
            and self.coeffs == other.coeffs
            and self.spec.p == other.spec.p
            and self.spec.modulus == other.spec.modulus
        )

    def __hash__(self) -> int:
        return hash((self.coeffs, self.spec.p, self.spec.modulus))

    def __repr__(self) -> str:
        return f"Residue({list(self.coeffs)} mod {self.spec.p})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: Residue) -> Residue:
        p = self.spec.p
        return Residue(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.spec)

    def __neg__(self) -> Residue:
        p = self.spec.p
        return Residue(tuple((-a) % p for a in self.coeffs), self.spec)

    def __mul__(self, other: Residue) -> Residue:
        p = self.spec.p
        mod = [c % p for c in self.spec.modulus]
        prod = _poly_mul_mod_p(list(self.coeffs), list(other.coeffs), p)
        prod = _poly_rem_mod_p(prod, mod, p)
        prod += [0] * (self.spec.f - len(prod))
        return Residue(tuple(prod), self.spec)


def residue_of(a: TruncatedUnramified) -> Residue:
    return Residue(tuple(c % a.spec.p for c in a.coeffs), a.spec)


@lru_cache(maxsize=None)
def xi_power_coeffs(p: int, f: int, modulus: tuple[int, ...], e: int) -> tuple[int, ...]:
    """Coefficients of xi^e in the power basis 1, xi, ..., xi^(f-1) over F_p."""
    mod = [c % p for c in modulus]
    poly = [1]
    base = [0, 1] if f > 1 else [0]
    for _ in range(e):
        poly = _poly_rem_mod_p(_poly_mul_mod_p(poly, base, p), mod, p)
    poly = list(poly) + [0] * (f - len(poly))
    return tuple(poly[:f])
