"""Exact row reduction over small prime fields on numpy rows."""

from __future__ import annotations

import numpy as np


def _dtype_for(p: int):
    # products of residues must not overflow: (p-1)^2 <= 127 allows int8
    return np.int8 if p <= 11 else np.int16


class NpEchelon:
    """Append-only row-echelon basis with unit pivots over F_p.

    Rows are stored in a preallocated buffer, so a prefix of the basis is a
    valid echelon basis by itself; ladder levels share the buffer as prefix
    views."""

    def __init__(self, width: int, p: int, capacity: int | None = None):
        self.width = width
        self.p = p
        self.dtype = _dtype_for(p)
        self._buf = np.zeros((capacity if capacity is not None else width, width),
                             dtype=self.dtype)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def rows(self) -> np.ndarray:
        return self._buf[: self.rank]

    def _reduce_batch(self, batch: np.ndarray, upto: int | None = None) -> np.ndarray:
        p = self.p
        limit = self.rank if upto is None else upto
        for k in range(limit):
            col = batch[:, self.pivots[k]]
            nz = np.nonzero(col)[0]
            if len(nz):
                batch[nz] = (batch[nz] - np.outer(col[nz], self._buf[k])) % p
        return batch

    def add_batch(self, batch: np.ndarray) -> int:
        """Insert rows; returns how many extended the rank."""
        p = self.p
        batch = self._reduce_batch(np.array(batch, dtype=self.dtype) % p)
        added = 0
        r = 0
        nrows = batch.shape[0]
        for col in range(self.width):
            if r >= nrows:
                break
            nz = np.nonzero(batch[r:, col])[0]
            if len(nz) == 0:
                continue
            i0 = r + nz[0]
            if i0 != r:
                batch[[r, i0]] = batch[[i0, r]]
            inv = pow(int(batch[r, col]), -1, p)
            batch[r] = (batch[r] * inv) % p
            rest = np.nonzero(batch[r + 1 :, col])[0]
            if len(rest):
                idx = rest + r + 1
                batch[idx, col:] = (
                    batch[idx, col:] - np.outer(batch[idx, col], batch[r, col:])
                ) % p
            self._buf[self.rank] = batch[r]
            self.pivots.append(col)
            added += 1
            r += 1
        return added

    def register_echelon_rows(self, rows: np.ndarray, pivots: list[int]):
        """Adopt rows already in echelon position (pivot entries 1, zeros in
        earlier pivot columns)."""
        n = rows.shape[0]
        self._buf[self.rank : self.rank + n] = rows.astype(self.dtype)
        self.pivots.extend(pivots)

    def prefix_view(self, rank: int) -> "EchelonView":
        return EchelonView(self, rank)

    def snapshot(self) -> "EchelonView":
        return EchelonView(self, self.rank)

    def contains(self, vec: np.ndarray) -> bool:
        v = np.array(vec, dtype=self.dtype).reshape(1, -1) % self.p
        return not self._reduce_batch(v).any()


class EchelonView:
    """A prefix of a growing echelon basis; valid because rows are
    append-only."""

    def __init__(self, parent: NpEchelon, rank: int):
        self.parent = parent
        self._rank = rank

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def rows(self) -> np.ndarray:
        return self.parent._buf[: self._rank]

    @property
    def pivots(self) -> list[int]:
        return self.parent.pivots[: self._rank]

    def contains(self, vec: np.ndarray) -> bool:
        v = np.array(vec, dtype=self.parent.dtype).reshape(1, -1) % self.parent.p
        return not self.parent._reduce_batch(v, upto=self._rank).any()


class FullSpace:
    """Stand-in for the whole group algebra at filtration level zero."""

    def __init__(self, width: int):
        self.width = width

    @property
    def rank(self) -> int:
        return self.width

    def contains(self, vec) -> bool:
        return True


