"""GF(2) linear algebra and systematic encoding."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MessageLengthMismatch

MAGIC = b"MOLSG1\n"


def rref(a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2); returns ``(matrix, pivot columns)``."""
    m = np.array(a, dtype=np.uint8) & 1
    n_rows, n_cols = m.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        hits = np.flatnonzero(m[r:, c])
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        mask = m[:, c].astype(bool)
        mask[r] = False
        m[mask] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a) -> int:
    return len(rref(a)[1])


@dataclass(frozen=True, eq=False)
class Encoder:
    """Generator ``G`` (``K x N``) in the original column order.

    ``perm`` lists the information columns first, then the parity columns;
    ``G[:, perm[:K]]`` is the identity.
    """

    generator: np.ndarray
    perm: np.ndarray
    rank: int

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def info_columns(self) -> np.ndarray:
        return self.perm[: self.k]


def build_encoder(h) -> Encoder:
    dense = h.to_dense() if hasattr(h, "to_dense") else np.asarray(h, dtype=np.uint8)
    red, pivots = rref(dense)
    n = dense.shape[1]
    r = len(pivots)
    free = np.array([c for c in range(n) if c not in set(pivots)], dtype=np.int64)
    g = np.zeros((free.size, n), dtype=np.uint8)
    g[np.arange(free.size), free] = 1
    # pivot bit i equals the parity of the free bits in row i
    g[:, pivots] = red[:r][:, free].T
    g.setflags(write=False)
    perm = np.concatenate([free, np.array(pivots, dtype=np.int64)])
    perm.setflags(write=False)
    return Encoder(g, perm, r)


def encode(enc: Encoder, message) -> np.ndarray:
    msg = np.asarray(message, dtype=np.uint8) & 1
    if msg.shape[-1] != enc.k:
        raise MessageLengthMismatch(
            f"MessageLengthMismatch: expected {enc.k} bits, got {msg.shape[-1]}"
        )
    return (msg.astype(np.int64) @ enc.generator % 2).astype(np.uint8)


def syndrome(h, word) -> np.ndarray:
    dense = h.to_dense() if hasattr(h, "to_dense") else np.asarray(h)
    return (dense.astype(np.int64) @ np.asarray(word, dtype=np.int64).T % 2).astype(np.uint8)


def write_generator(enc: Encoder, path) -> None:
    """Header ``MOLSG1``, then ``N K``, then the permutation, then ``K`` packed rows."""
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(f"{enc.n} {enc.k}\n".encode())
        fh.write((" ".join(map(str, enc.perm.tolist())) + "\n").encode())
        fh.write(np.packbits(enc.generator, axis=1).tobytes())


def read_generator(path) -> Encoder:
    data = Path(path).read_bytes()
    if not data.startswith(MAGIC):
        raise ValueError("not a generator file")
    rest = data[len(MAGIC):]
    line1, rest = rest.split(b"\n", 1)
    line2, body = rest.split(b"\n", 1)
    n, k = map(int, line1.split())
    perm = np.array(line2.split(), dtype=np.int64)
    packed = np.frombuffer(body, dtype=np.uint8).reshape(k, (n + 7) // 8)
    g = np.unpackbits(packed, axis=1)[:, :n]
    return Encoder(g, perm, n - k)
