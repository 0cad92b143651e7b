import random

import pytest

from iwahori_gr.errors import BadDegree, NonPrime, NotAUnit
from iwahori_gr.padic_ring import (
    INF,
    Residue,
    element_from_dict,
    inv_unit,
    residue_of,
    ring_make,
    teichmuller,
    teichmuller_lift,
    valuation,
    xi_power_coeffs,
)


def brute_irreducible_mod_p(poly, p):
    """Exhaustive divisor search: no monic factor of degree 1..deg-1."""
    deg = len(poly) - 1

    def poly_mod(a, m):
        a = list(a)
        while len(a) >= len(m) and a:
            if a[-1] % p:
                lead = a[-1]
                for i in range(len(m)):
                    a[len(a) - len(m) + i] = (a[len(a) - len(m) + i] - lead * m[i]) % p
            a.pop()
        return [c % p for c in a]

    import itertools

    for d in range(1, deg):
        for tail in itertools.product(range(p), repeat=d):
            m = list(tail) + [1]
            if not any(poly_mod(poly, m)):
                return False
    return True


def test_ring_make_f1_is_plain_truncation():
    spec = ring_make(5, 1, 2)
    assert spec.pN == 25
    assert spec.from_int(27).coeffs == (2,)


def test_ring_make_quadratic_modulus_is_irreducible():
    spec = ring_make(5, 2, 2)
    assert len(spec.modulus) == 3 and spec.modulus[-1] == 1
    assert brute_irreducible_mod_p(list(spec.modulus), 5)


def test_ring_make_rejects_bad_input():
    with pytest.raises(NonPrime):
        ring_make(4, 1, 2)
    with pytest.raises(BadDegree):
        ring_make(5, 0, 2)
    with pytest.raises(BadDegree):
        ring_make(5, 1, 0)


def test_valuation_basics():
    spec = ring_make(5, 1, 2)
    assert valuation(spec.from_int(10)) == 1
    assert valuation(spec.from_int(0)) == INF
    assert valuation(spec.from_int(7)) == 0


def test_valuation_of_p_times_unit_degree_two():
    spec = ring_make(5, 2, 2)
    # exhaustive search for some unit, then scale by p
    unit = next(a for a in spec.elements() if valuation(a) == 0 and a != spec.one())
    assert valuation(spec.from_int(5) * unit) == 1


def test_teichmuller_f1_matches_iteration_oracle():
    spec = ring_make(5, 1, 2)
    a = 2
    seen = a
    for _ in range(10):
        nxt = pow(seen, 5, 25)
        if nxt == seen:
            break
        seen = nxt
    assert seen == 7
    assert teichmuller_lift(spec.from_int(2)) == spec.from_int(7)


@pytest.mark.parametrize("p,f", [(5, 1), (5, 2), (7, 2)])
def test_teichmuller_defining_properties(p, f):
    spec = ring_make(p, f, 3)
    q = p**f
    assert teichmuller(0, spec) == spec.one()
    for r in range(f):
        t = teichmuller(r, spec)
        assert t**q == t
        assert residue_of(t) == residue_of(spec.xi() ** r)


def test_teichmuller_multiplicativity_via_power_basis():
    spec = ring_make(5, 2, 3)
    f = spec.f
    for r in range(f):
        for s in range(f):
            prod = teichmuller(r, spec) * teichmuller(s, spec)
            coeffs = xi_power_coeffs(spec.p, f, spec.modulus, r + s)
            expect = spec.zero()
            for t, c in enumerate(coeffs):
                expect = expect + c * teichmuller(t, spec)
            # both are roots of unity lifts of the same residue
            assert residue_of(prod) == residue_of(expect)
            assert teichmuller_lift(prod) == prod


def test_arithmetic_examples():
    spec = ring_make(5, 1, 2)
    assert spec.from_int(7) * spec.from_int(4) == spec.from_int(3)
    x = spec.one() - spec.from_int(10)
    assert x == spec.from_int(16)
    inv = inv_unit(x)
    # oracle: exhaustive inverse search mod 25
    brute = next(k for k in range(25) if (16 * k) % 25 == 1)
    assert brute == 11
    assert inv == spec.from_int(11)
    with pytest.raises(NotAUnit):
        inv_unit(spec.from_int(5))


@pytest.mark.parametrize("p,f,N", [(5, 1, 2), (5, 2, 2)])
def test_ring_axioms_on_random_triples(p, f, N):
    spec = ring_make(p, f, N)
    rng = random.Random(1234)

    def rand():
        return spec.from_coeffs([rng.randrange(spec.pN) for _ in range(f)])

    one = spec.one()
    for _ in range(1000):
        a, b, c = rand(), rand(), rand()
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * one == a
        assert a + (-a) == spec.zero()


def test_valuation_multiplicative_below_truncation():
    spec = ring_make(5, 2, 3)
    rng = random.Random(7)
    for _ in range(300):
        a = spec.from_coeffs([rng.randrange(spec.pN) for _ in range(2)])
        b = spec.from_coeffs([rng.randrange(spec.pN) for _ in range(2)])
        va, vb = valuation(a), valuation(b)
        if va is INF or vb is INF or va + vb >= spec.N:
            continue
        assert valuation(a * b) == va + vb


def test_residue_field_axioms_and_generator():
    spec = ring_make(5, 2, 2)
    xi = residue_of(spec.xi())
    # xi generates the field over F_5: the F_5-combinations of 1 and xi
    # exhaust all 25 elements
    span = set()
    one = Residue((1, 0), spec)
    for a in range(5):
        for b in range(5):
            elt = Residue((a, 0), spec) + Residue((b, 0), spec) * xi
            span.add(elt.coeffs)
    assert len(span) == 25
    # sampled field axioms
    vals = [Residue((a, b), spec) for a in range(5) for b in range(5)]
    for x in vals[:8]:
        for y in vals[:8]:
            assert x * y == y * x
            assert (x + y).coeffs == tuple((a + b) % 5 for a, b in zip(x.coeffs, y.coeffs))


def test_json_round_trip():
    spec = ring_make(5, 2, 2)
    a = spec.from_coeffs([7, 19])
    d = a.to_dict()
    assert d == {"p": 5, "f": 2, "N": 2, "coeffs": [7, 19]}
    assert element_from_dict(d) == a
