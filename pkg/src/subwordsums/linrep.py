"""Signed-permutation transfer matrices and exact partial-sum evaluators.

For an orbit of selectors, the two step maps induce matrices with exactly
one nonzero entry of value +-1 per row and column; the row for selector u'
has its nonzero in the column of u's digit-a successor, with sign -1
exactly when the step reports sign bit 1.  State vectors collect the signs
(-1)^bracket over the orbit, and partial-sum vectors accumulate them.

All arithmetic is exact integer arithmetic.  Matrices are stored as
permutation + signs and only expanded to dense grids on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .counting import prefix_parity_mask, support_mask
from .words import CapacityError, DomainError
from .dynamics import Orbit

DEFAULT_DIRECT_SUM_LIMIT = 1 << 26


@dataclass(frozen=True)
class SignedPermutation:
    """A matrix with one +-1 entry per row and column, stored sparsely.

    ``perm[i]`` is the column of row i's unique nonzero entry and
    ``signs[i]`` its value.  Applying such a matrix permutes coordinates
    and flips signs, so it preserves the Euclidean norm.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise DomainError("perm is not a permutation")
        if len(self.signs) != n or any(s not in (-1, 1) for s in self.signs):
            raise DomainError("signs must be +-1, one per row")

    @property
    def size(self) -> int:
        return len(self.perm)

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product (row i picks sign * vec[perm[i]])."""
        if len(vec) != self.size:
            raise DomainError("vector length does not match matrix size")
        perm, signs = self.perm, self.signs
        return [signs[i] * vec[perm[i]] for i in range(len(perm))]

    def dense(self) -> list[list[int]]:
        n = self.size
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][self.perm[i]] = self.signs[i]
        return rows

    def cycles(self) -> list[list[int]]:
        """Cycle decomposition of the underlying permutation, deterministic."""
        seen = [False] * self.size
        out: list[list[int]] = []
        for start in range(self.size):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.perm[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.perm[j]
            out.append(cyc)
        return out


def build_matrices(orb: Orbit) -> tuple[SignedPermutation, SignedPermutation]:
    """The digit-0 and digit-1 transfer matrices of an orbit."""
    m0 = SignedPermutation(orb.succ0, tuple(1 - 2 * t for t in orb.sign0))
    m1 = SignedPermutation(orb.succ1, tuple(1 - 2 * t for t in orb.sign1))
    return m0, m1


def apply_sum(m0: SignedPermutation, m1: SignedPermutation,
              vec: Sequence[int]) -> list[int]:
    """Apply m0 + m1 without forming a dense matrix."""
    p0, s0 = m0.perm, m0.signs
    p1, s1 = m1.perm, m1.signs
    return [s0[i] * vec[p0[i]] + s1[i] * vec[p1[i]] for i in range(len(p0))]


def dense_sum(m0: SignedPermutation, m1: SignedPermutation) -> list[list[int]]:
    """Dense integer grid of m0 + m1, row major."""
    n = m0.size
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][m0.perm[i]] += m0.signs[i]
        rows[i][m1.perm[i]] += m1.signs[i]
    return rows


def _supports(orb: Orbit) -> tuple[int, ...]:
    sup = orb._supports
    if sup is None:
        sup = tuple(support_mask(el) for el in orb.elements)
        orb._supports = sup
    return sup


def state_vector(orb: Orbit, n: int) -> list[int]:
    """The +-1 vector whose entry at selector u' is (-1)^bracket(w, u', n)."""
    mask = prefix_parity_mask(orb.w, n)
    return [1 - 2 * ((mask & s).bit_count() & 1) for s in _supports(orb)]


def constant_c(orb: Orbit) -> list[int]:
    """The affine constant of the odd-endpoint recurrence: (I - M)v(0) + v(1)."""
    m0, m1 = build_matrices(orb)
    v0 = state_vector(orb, 0)
    v1 = state_vector(orb, 1)
    mv0 = apply_sum(m0, m1, v0)
    return [v0[i] - mv0[i] + v1[i] for i in range(len(v0))]


def partial_sum_direct(orb: Orbit, n_top: int,
                       limit: int = DEFAULT_DIRECT_SUM_LIMIT) -> list[int]:
    """Sum of the state vectors for n = 0..n_top, by direct accumulation.

    This is the reference evaluator: each state vector is produced from the
    counting recurrences alone, so the result is independent of the matrix
    machinery that partial_sum_fast relies on.
    """
    if n_top < 0:
        raise DomainError("the endpoint must be non-negative")
    if n_top > limit:
        raise CapacityError(f"direct summation capped at {limit}")
    sup = _supports(orb)
    w = orb.w
    total = [0] * len(sup)
    for n in range(n_top + 1):
        mask = prefix_parity_mask(w, n)
        for i, s in enumerate(sup):
            total[i] += 1 - 2 * ((mask & s).bit_count() & 1)
    return total


class PartialSumEvaluator:
    """Exact partial-sum vectors in logarithmically many matrix applications.

    Uses the endpoint recurrences

        V(2K+1) = M V(K) + c
        V(2K)   = M V(K) + c - M1 v(K)      (K >= 1)

    with V(0), V(1), V(2) tabulated directly, and builds the state vectors
    v(K) along the binary digits of K from v(1).  Intermediate vectors are
    memoized, so sweeping many endpoints over one orbit costs amortized
    constant work per endpoint.  Results equal partial_sum_direct exactly.
    """

    def __init__(self, orb: Orbit):
        self.orbit = orb
        self._m0, self._m1 = build_matrices(orb)
        self._c = constant_c(orb)
        v0 = state_vector(orb, 0)
        v1 = state_vector(orb, 1)
        v2 = state_vector(orb, 2)
        self._v: dict[int, list[int]] = {0: v0, 1: v1, 2: v2}
        vv1 = [a + b for a, b in zip(v0, v1)]
        self._V: dict[int, list[int]] = {
            0: v0, 1: vv1, 2: [a + b for a, b in zip(vv1, v2)]}

    def state(self, n: int) -> list[int]:
        """v(n), via the digit recurrence v(2n+i) = M_i v(n)."""
        table = self._v
        got = table.get(n)
        if got is not None:
            return list(got)
        chain = []
        m = n
        while m not in table:
            chain.append(m)
            m >>= 1
        mats = (self._m0, self._m1)
        for m in reversed(chain):
            mat = mats[m & 1]
            prev = table[m >> 1]
            table[m] = [mat.signs[i] * prev[mat.perm[i]]
                        for i in range(len(prev))]
        return list(table[n])

    def vector(self, n_top: int) -> list[int]:
        """V(n_top), the exact sum of state vectors for n = 0..n_top."""
        if n_top < 0:
            raise DomainError("the endpoint must be non-negative")
        table = self._V
        got = table.get(n_top)
        if got is not None:
            return list(got)
        chain = []
        m = n_top
        while m not in table:
            chain.append(m)
            m >>= 1
        m0, m1, c = self._m0, self._m1, self._c
        for m in reversed(chain):
            vk = table[m >> 1]
            acc = [m0.signs[i] * vk[m0.perm[i]] + m1.signs[i] * vk[m1.perm[i]]
                   + c[i] for i in range(len(c))]
            if not m & 1:
                sk = self.state(m >> 1)
                acc = [acc[i] - m1.signs[i] * sk[m1.perm[i]]
                       for i in range(len(c))]
            table[m] = acc
        return list(table[n_top])

    def scalar(self, n_top: int) -> int:
        """The entry of V(n_top) at the orbit's base selector."""
        return self.vector(n_top)[0]


def partial_sum_fast(orb: Orbit, n_top: int) -> list[int]:
    """V(n_top) via the endpoint recurrences; equals partial_sum_direct exactly.

    The evaluator is cached on the orbit, so repeated calls share memoized
    intermediate vectors.
    """
    ev = orb._evaluator
    if ev is None:
        ev = PartialSumEvaluator(orb)
        orb._evaluator = ev
    return ev.vector(n_top)
