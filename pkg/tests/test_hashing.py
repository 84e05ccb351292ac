"""Toeplitz family: universality by exhaustive seed enumeration,
linearity, and the extractor property against the leftover-hash bound."""

import itertools

import numpy as np
import pytest

from wiretap_commit.bits import BitVector
from wiretap_commit.errors import DimensionError
from wiretap_commit.hashing import (
    HashSpec,
    hash_all_inputs,
    hash_evaluate,
    lhl_bound,
    sample_hash,
)
from wiretap_commit.rng import make_rng


def all_specs(n, l):
    for s in range(1 << (n + l - 1)):
        yield HashSpec(n, l, BitVector.from_int(s, n + l - 1))


def naive_eval(spec: HashSpec, x: BitVector) -> BitVector:
    """Bit-by-bit GF(2) matrix-vector product, independent of the
    sliding-window implementation."""
    n, l = spec.input_bits, spec.output_bits
    seed = list(spec.seed)
    out = []
    for i in range(l):
        acc = 0
        for j in range(n):
            acc ^= seed[i + n - 1 - j] & x[j]
        out.append(acc)
    return BitVector(out)


class TestSampleHash:
    def test_seed_length(self):
        h = sample_hash(make_rng(0), 4, 2)
        assert len(h.seed) == 5
        assert h.input_bits == 4 and h.output_bits == 2

    def test_one_bit_family(self):
        # n = l = 1: the two members are the zero map and the identity
        outputs = set()
        for spec in all_specs(1, 1):
            outputs.add((hash_evaluate(spec, BitVector([0]))[0],
                         hash_evaluate(spec, BitVector([1]))[0]))
        assert outputs == {(0, 0), (0, 1)}

    def test_dimension_errors(self):
        with pytest.raises(DimensionError):
            sample_hash(make_rng(0), 4, 5)
        with pytest.raises(DimensionError):
            sample_hash(make_rng(0), 4, 0)

    def test_xor_universality_exact_n4_l2(self):
        # every distinct pair collides on exactly 8 of the 32 seeds
        tables = [hash_all_inputs(spec) for spec in all_specs(4, 2)]
        for a, b in itertools.combinations(range(16), 2):
            collisions = sum(int(t[a] == t[b]) for t in tables)
            assert collisions == 8, (a, b, collisions)

    def test_xor_universality_exact_small_sizes(self):
        for n, l in ((3, 1), (3, 2), (4, 3), (5, 2)):
            tables = np.stack([hash_all_inputs(spec) for spec in all_specs(n, l)])
            expected = tables.shape[0] >> l
            for a, b in itertools.combinations(range(1 << n), 2):
                assert int((tables[:, a] == tables[:, b]).sum()) == expected


class TestHashEvaluate:
    def test_zero_maps_to_zero(self):
        rng = make_rng(1)
        for _ in range(20):
            h = sample_hash(rng, 9, 4)
            assert hash_evaluate(h, BitVector.zeros(9)) == BitVector.zeros(4)

    def test_identity_seed(self):
        # seed with the single 1 on the main diagonal gives T = I
        n = 5
        seed = BitVector([1 if i == n - 1 else 0 for i in range(2 * n - 1)])
        h = HashSpec(n, n, seed)
        assert np.array_equal(h.as_matrix(), np.eye(n, dtype=np.uint8))
        rng = make_rng(2)
        for _ in range(10):
            x = BitVector.random(rng, n)
            assert hash_evaluate(h, x) == x

    def test_against_naive_oracle(self):
        rng = make_rng(3)
        for _ in range(200):
            h = sample_hash(rng, 8, 3)
            x = BitVector.random(rng, 8)
            assert hash_evaluate(h, x) == naive_eval(h, x)

    def test_matches_matrix(self):
        rng = make_rng(4)
        h = sample_hash(rng, 8, 3)
        x = BitVector.random(rng, 8)
        expected = (h.as_matrix() @ x.bits.astype(np.int64)) & 1
        assert np.array_equal(hash_evaluate(h, x).bits, expected.astype(np.uint8))

    def test_length_mismatch(self):
        h = sample_hash(make_rng(5), 8, 3)
        with pytest.raises(DimensionError):
            hash_evaluate(h, BitVector.zeros(7))

    def test_linearity(self):
        rng = make_rng(6)
        for _ in range(10_000):
            h = sample_hash(rng, 12, 5)
            x1 = BitVector.random(rng, 12)
            x2 = BitVector.random(rng, 12)
            assert hash_evaluate(h, x1 ^ x2) == hash_evaluate(h, x1) ^ hash_evaluate(h, x2)

    def test_determinism(self):
        h = sample_hash(make_rng(7), 16, 8)
        x = BitVector.random(make_rng(8), 16)
        assert hash_evaluate(h, x) == hash_evaluate(h, x)

    def test_hash_all_inputs_matches_pointwise(self):
        rng = make_rng(9)
        for _ in range(10):
            h = sample_hash(rng, 6, 4)
            table = hash_all_inputs(h)
            for i in range(64):
                assert int(table[i]) == hash_evaluate(h, BitVector.from_int(i, 6)).to_int()


def exact_extractor_distance(n, l, subset):
    """SD of (seed, h(X)) from (seed, uniform), X uniform on subset.

    Full enumeration over every seed; independent of the production
    code paths except hash_all_inputs (itself tested pointwise above).
    """
    seeds = 1 << (n + l - 1)
    total = 0.0
    uni = 1.0 / (1 << l)
    for s in range(seeds):
        spec = HashSpec(n, l, BitVector.from_int(s, n + l - 1))
        table = hash_all_inputs(spec)
        counts = np.bincount(table[subset], minlength=1 << l)
        dist = counts / len(subset)
        total += 0.5 * np.abs(dist - uni).sum()
    return total / seeds


class TestLeftoverHash:
    @pytest.mark.parametrize("k,l,expected", [
        (2, 2, 0.5),
        (4, 2, 0.25),
        (10, 2, 0.03125),
    ])
    def test_bound_values(self, k, l, expected):
        assert lhl_bound(k, l) == pytest.approx(expected, abs=1e-15)

    def test_bound_caps_at_one(self):
        assert lhl_bound(0, 8) == 1.0

    def test_extractor_distance_below_bound(self):
        # flat sources on random supports of size 2^k
        n, l = 8, 2
        rng = np.random.default_rng(10)
        for k in (3, 5, 7):
            for _ in range(3):
                subset = rng.choice(1 << n, size=1 << k, replace=False)
                sd = exact_extractor_distance(n, l, subset)
                assert sd <= lhl_bound(k, l) + 1e-12


class TestSerialization:
    def test_config_roundtrip(self):
        h = sample_hash(make_rng(11), 10, 4)
        assert HashSpec.from_config(h.to_config()) == h

    def test_config_fields(self):
        h = sample_hash(make_rng(12), 10, 4)
        cfg = h.to_config()
        assert set(cfg) == {"n", "l", "seed"}
        assert cfg["n"] == 10 and cfg["l"] == 4
        assert len(cfg["seed"]) == 2 * ((10 + 4 - 1 + 7) // 8)
