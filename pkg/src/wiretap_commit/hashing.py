"""Toeplitz hashing over GF(2): the 2-universal (XOR-universal) family
used both as the binding challenge and as the randomness extractor.

A member with n input bits and l output bits is described by a seed of
n + l - 1 bits packing the first row (reversed) and first column of an
l x n Toeplitz matrix T: T[i][j] = seed[i + n - 1 - j], so row i reads
the seed window [i, i + n) right-to-left.  Evaluation is T @ x over
GF(2); the map is linear in x, and over a uniform seed any fixed pair
x != x' collides with probability exactly 2^-l.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .bits import BitVector
from .errors import DimensionError


@dataclass(frozen=True)
class HashSpec:
    """One member of the Toeplitz family: dimensions plus seed."""

    input_bits: int
    output_bits: int
    seed: BitVector

    def __post_init__(self):
        n, l = self.input_bits, self.output_bits
        if n < 1 or l < 1 or l > n:
            raise DimensionError(
                f"need 1 <= output_bits <= input_bits, got n={n}, l={l}"
            )
        if len(self.seed) != n + l - 1:
            raise DimensionError(
                f"seed length {len(self.seed)} != n + l - 1 = {n + l - 1}"
            )

    def as_matrix(self) -> np.ndarray:
        """The l x n Toeplitz matrix, row i = seed[i : i+n] reversed."""
        windows = sliding_window_view(self.seed.bits, self.input_bits)
        return windows[: self.output_bits, ::-1].copy()

    def to_config(self) -> dict:
        return {
            "n": self.input_bits,
            "l": self.output_bits,
            "seed": self.seed.to_hex(),
        }

    @classmethod
    def from_config(cls, cfg: dict) -> "HashSpec":
        n, l = int(cfg["n"]), int(cfg["l"])
        return cls(n, l, BitVector.from_hex(cfg["seed"], n + l - 1))


def sample_hash(rng: np.random.Generator, n: int, l: int) -> HashSpec:
    """Uniform member of the (n -> l) Toeplitz family."""
    if l < 1 or l > n:
        raise DimensionError(f"need 1 <= l <= n, got n={n}, l={l}")
    return HashSpec(n, l, BitVector.random(rng, n + l - 1))


def hash_evaluate(h: HashSpec, x: BitVector) -> BitVector:
    """Toeplitz matrix-vector product over GF(2)."""
    if len(x) != h.input_bits:
        raise DimensionError(
            f"input length {len(x)} != input_bits {h.input_bits}"
        )
    windows = sliding_window_view(h.seed.bits, h.input_bits)[: h.output_bits]
    # row i of T is the window reversed, so pair it with x reversed
    out = (windows @ x.bits[::-1].astype(np.int64)) & 1
    return BitVector(out.astype(np.uint8))


def hash_all_inputs(h: HashSpec) -> np.ndarray:
    """Hash values of every x in {0,1}^n, packed as integers.

    Entry i is the hash of the word whose big-endian integer encoding
    is i (bit j of the word = bit n-1-j of i).  Built by a linearity
    doubling pass, so it costs O(2^n) XORs; requires n <= 24, l <= 32.
    """
    n, l = h.input_bits, h.output_bits
    if n > 24:
        raise DimensionError(f"exhaustive hashing limited to n <= 24, got {n}")
    if l > 32:
        raise DimensionError(f"packed hashing limited to l <= 32, got {l}")
    seed = h.seed.bits
    # column j of T is seed[n-1-j : n-1-j+l]; pack rows MSB-first
    weights = 1 << np.arange(l - 1, -1, -1, dtype=np.uint32)
    cols = np.array(
        [int((seed[n - 1 - j : n - 1 - j + l].astype(np.uint32) * weights).sum())
         for j in range(n)],
        dtype=np.uint32,
    )
    out = np.zeros(1, dtype=np.uint32)
    # appending the block with the new index bit set; index bit k
    # (weight 2^k) corresponds to input coordinate n-1-k
    for j in range(n - 1, -1, -1):
        out = np.concatenate([out, out ^ cols[j]])
    return out


def lhl_bound(min_entropy_k: float, l: int) -> float:
    """Leftover-hash-lemma distance bound: min(1, 0.5 * 2^((l-k)/2)).

    Statistical distance of (seed, hash(X)) from (seed, uniform l bits)
    when X has min-entropy at least k.
    """
    if l < 1:
        raise DimensionError(f"output length must be >= 1, got {l}")
    return min(1.0, 0.5 * 2.0 ** ((l - min_entropy_k) / 2.0))
