import random
import time

import pytest

from subwordsums.counting import count_subword
from subwordsums.dynamics import orbit
from subwordsums.linrep import (PartialSumEvaluator, SignedPermutation,
                                apply_sum, build_matrices, constant_c,
                                dense_sum, partial_sum_direct,
                                partial_sum_fast, state_vector)
from subwordsums.words import BinaryWord, CapacityError, canonical_base, word


def test_matrix_example():
    orb = orbit(word("011"), word("001"))
    m0, m1 = build_matrices(orb)
    assert m0.dense() == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    assert m1.dense() == [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]
    assert dense_sum(m0, m1) == [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, -1, 1], [1, 0, 0, -1]]


def test_signed_permutation_structure_exhaustive():
    for length in range(2, 9):
        for bits in range(1 << length):
            orb = orbit(BinaryWord(length, bits), canonical_base(length))
            for m in build_matrices(orb):
                n = m.size
                assert sorted(m.perm) == list(range(n))
                cols = [0] * n
                for row in m.dense():
                    assert sum(1 for x in row if x) == 1
                    for j, x in enumerate(row):
                        if x:
                            cols[j] += 1
                            assert x in (-1, 1)
                assert cols == [1] * n


def test_norm_preservation():
    rng = random.Random(61)
    orb = orbit(word("0110"), canonical_base(4))
    m0, m1 = build_matrices(orb)
    for _ in range(100):
        x = [rng.randint(-50, 50) for _ in range(m0.size)]
        for m in (m0, m1):
            assert sum(v * v for v in m.apply(x)) == sum(v * v for v in x)


def test_signed_permutation_validation():
    with pytest.raises(Exception):
        SignedPermutation((0, 0), (1, 1))
    with pytest.raises(Exception):
        SignedPermutation((0, 1), (1, 2))


def test_state_vector_entries():
    orb = orbit(word("011"), word("001"))
    for n in range(1001):
        s0 = count_subword(word("0"), n)
        s01 = count_subword(word("01"), n)
        s011 = count_subword(word("011"), n)
        expected = [(-1) ** s011, (-1) ** (s01 + s011),
                    (-1) ** (s0 + s011), (-1) ** (s0 + s01 + s011)]
        assert state_vector(orb, n) == expected


def test_state_vector_entries_are_signs():
    rng = random.Random(67)
    for _ in range(50):
        length = rng.randint(2, 8)
        orb = orbit(BinaryWord(length, rng.getrandbits(length)),
                    canonical_base(length))
        v = state_vector(orb, rng.randint(0, 10**6))
        assert all(x in (-1, 1) for x in v)


def test_state_recurrence():
    rng = random.Random(71)
    words = [BinaryWord(ell, rng.getrandbits(ell))
             for ell in range(2, 9) for _ in range(4)]
    for w in words:
        orb = orbit(w, canonical_base(w.length))
        m0, m1 = build_matrices(orb)
        for n in list(range(1, 500)) + [10**4, 10**4 + 1]:
            v = state_vector(orb, n)
            assert state_vector(orb, 2 * n) == m0.apply(v)
            assert state_vector(orb, 2 * n + 1) == m1.apply(v)


def test_constant_example():
    orb = orbit(word("011"), word("001"))
    assert constant_c(orb) == [0, 2, 0, -2]


def test_constant_bounded():
    rng = random.Random(73)
    for _ in range(60):
        length = rng.randint(2, 8)
        orb = orbit(BinaryWord(length, rng.getrandbits(length)),
                    canonical_base(length))
        assert all(abs(x) <= 3 for x in constant_c(orb))


def test_sum_recurrence_direct():
    rng = random.Random(79)
    words = [word("01"), word("011")] + [
        BinaryWord(ell, rng.getrandbits(ell)) for ell in (4, 5, 6) for _ in range(2)]
    for w in words:
        orb = orbit(w, canonical_base(w.length))
        m0, m1 = build_matrices(orb)
        c = constant_c(orb)
        for n_top in list(range(0, 80)) + [500, 501]:
            lhs = partial_sum_direct(orb, 2 * n_top + 1)
            inner = partial_sum_direct(orb, n_top)
            rhs = [x + y for x, y in zip(apply_sum(m0, m1, inner), c)]
            assert lhs == rhs


def test_geometric_endpoint_identity():
    # V(2^n - 1) = v(0) + sum of M^i v(1) over i < n
    for text in ("011", "10"):
        w = word(text)
        orb = orbit(w, canonical_base(w.length))
        m0, m1 = build_matrices(orb)
        acc = state_vector(orb, 0)
        powered = state_vector(orb, 1)
        for n in range(1, 17):
            acc = [a + b for a, b in zip(acc, powered)]
            assert acc == partial_sum_direct(orb, (1 << n) - 1)
            powered = apply_sum(m0, m1, powered)


def test_direct_sum_examples():
    orb = orbit(word("01"), word("01"))
    assert partial_sum_direct(orb, 3)[0] == 4
    assert partial_sum_direct(orb, 0) == state_vector(orb, 0)
    v0, v1 = state_vector(orb, 0), state_vector(orb, 1)
    assert partial_sum_fast(orb, 1) == [a + b for a, b in zip(v0, v1)]


def test_direct_sum_limit():
    orb = orbit(word("01"), word("01"))
    with pytest.raises(CapacityError):
        partial_sum_direct(orb, 100, limit=50)


def test_fast_equals_direct():
    for text in ("01", "011", "10", "111", "0110", "1011"):
        w = word(text)
        orb = orbit(w, canonical_base(w.length))
        ev = PartialSumEvaluator(orb)
        total = [0] * len(orb)
        for n in range(2001):
            v = state_vector(orb, n)
            total = [a + b for a, b in zip(total, v)]
            assert ev.state(n) == v
            assert ev.vector(n) == total
            assert partial_sum_fast(orb, n) == total


def test_fast_evaluator_speed():
    orb = orbit(word("01"), word("01"))
    check = orbit(word("01"), word("01"))
    assert partial_sum_fast(check, 1 << 20) == partial_sum_direct(check, 1 << 20)
    start = time.perf_counter()
    partial_sum_fast(orb, 1 << 40)
    elapsed = time.perf_counter() - start
    assert elapsed < 0.05, elapsed


def test_quadrupling_identity():
    orb = orbit(word("01"), word("01"))
    for n in range(1001):
        assert partial_sum_fast(orb, 4 * n + 3)[0] == 2 + 2 * partial_sum_fast(orb, n)[0]
