"""Small exact matrix helpers over the truncated ring, plus the concrete
matrix realizations used as oracles: SL_{n+1} for type A, Sp_4 for C2, and
the rank-one SL_2 embedding attached to a single root."""

from __future__ import annotations

from .padic_ring import RingSpec, TruncatedUnramified, inv_unit
from .root_system import RootSystem


def identity_matrix(d: int, spec: RingSpec):
    one, zero = spec.one(), spec.zero()
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def mat_mul(a, b, spec: RingSpec):
    d = len(a)
    zero = spec.zero()
    out = [[zero] * d for _ in range(d)]
    for i in range(d):
        ai = a[i]
        row = out[i]
        for k in range(d):
            x = ai[k]
            if x.is_zero():
                continue
            bk = b[k]
            for j in range(d):
                if not bk[j].is_zero():
                    row[j] = row[j] + x * bk[j]
    return out


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_inv_unipotent_or_torus(m, spec: RingSpec):
    """Inverse via Gaussian elimination; every pivot must be a unit."""
    d = len(m)
    aug = [list(row) + list(ident_row) for row, ident_row in zip(m, identity_matrix(d, spec))]
    for col in range(d):
        piv = inv_unit(aug[col][col])
        aug[col] = [piv * v for v in aug[col]]
        for r in range(d):
            if r != col and not aug[r][col].is_zero():
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [row[d:] for row in aug]


def scalar_matrix(d: int, t: TruncatedUnramified, spec: RingSpec):
    zero = spec.zero()
    return [[t if i == j else zero for j in range(d)] for i in range(d)]


# ---------------------------------------------------------------------------
# type A model: root (i, j) acts as the elementary matrix E_ij
# ---------------------------------------------------------------------------

def type_a_entry(rs: RootSystem, root: tuple[int, ...]) -> tuple[int, int]:
    """Matrix position of a type-A root: the root summing consecutive simple
    roots i..j-1 maps to entry (i, j) and its negative to (j, i)."""
    coords = root if sum(root) > 0 else tuple(-c for c in root)
    support = [i for i, c in enumerate(coords) if c]
    i, j = support[0], support[-1] + 1
    return (i, j) if sum(root) > 0 else (j, i)


def type_a_root_matrix(rs: RootSystem, root, x: TruncatedUnramified):
    d = rs.rank + 1
    m = identity_matrix(d, x.spec)
    i, j = type_a_entry(rs, root)
    m[i][j] = m[i][j] + x
    return m


def type_a_coroot_matrix(rs: RootSystem, i: int, t: TruncatedUnramified):
    """alpha_i^vee(t) = diag(1, .., t, t^{-1}, .., 1)."""
    d = rs.rank + 1
    m = identity_matrix(d, t.spec)
    m[i][i] = t
    m[i + 1][i + 1] = inv_unit(t)
    return m


# ---------------------------------------------------------------------------
# C2 model inside Sp_4, rows/cols carrying weights (e1, e2, -e2, -e1)
# ---------------------------------------------------------------------------

def _c2_positions(root):
    """Entries of the nilpotent generator for each C2 root, with signs.
    Simple roots: alpha1 = e1-e2 (short), alpha2 = 2e2 (long)."""
    table = {
        (1, 0): [((0, 1), 1), ((2, 3), -1)],
        (0, 1): [((1, 2), 1)],
        (1, 1): [((0, 2), 1), ((1, 3), 1)],
        (2, 1): [((0, 3), 1)],
    }
    pos = root if sum(root) > 0 else tuple(-c for c in root)
    entries = table[pos]
    if sum(root) > 0:
        return entries
    return [((c, r), s) for ((r, c), s) in entries]


def c2_root_matrix(rs: RootSystem, root, x: TruncatedUnramified):
    m = identity_matrix(4, x.spec)
    for (r, c), s in _c2_positions(root):
        m[r][c] = m[r][c] + (x if s > 0 else -x)
    return m


def c2_coroot_matrix(rs: RootSystem, i: int, t: TruncatedUnramified):
    ti = inv_unit(t)
    spec = t.spec
    if i == 0:  # alpha1^vee(t) = diag(t, 1/t, t, 1/t)
        diag = [t, ti, t, ti]
    else:       # alpha2^vee(t) = diag(1, t, 1/t, 1)
        diag = [spec.one(), t, ti, spec.one()]
    m = identity_matrix(4, spec)
    for k in range(4):
        m[k][k] = diag[k]
    return m


# ---------------------------------------------------------------------------
# SL_2 embedding attached to one root
# ---------------------------------------------------------------------------

def sl2_root_matrix(positive: bool, x: TruncatedUnramified):
    m = identity_matrix(2, x.spec)
    if positive:
        m[0][1] = x
    else:
        m[1][0] = x
    return m


def sl2_torus_matrix(t: TruncatedUnramified):
    m = identity_matrix(2, t.spec)
    m[0][0] = t
    m[1][1] = inv_unit(t)
    return m
