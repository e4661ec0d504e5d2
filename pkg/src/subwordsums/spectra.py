"""Exact detection of modulus-2 eigenvalues and spectral radius estimation.

The sum M = M0 + M1 of two signed permutations has operator norm at most 2,
and an eigenvalue of modulus exactly 2 exists if and only if M0 and M1
share an eigenvector, with all entries nonzero, for a common unimodular
eigenvalue mu = lambda / 2.  Because every cycle of either permutation here
has power-of-two length, mu must be a root of unity of order dividing
2 * (largest cycle length); writing mu = omega^q for a primitive root of
unity omega of that order turns the shared-eigenvector condition into a
system of linear congruences for q over the orbit's two-colored transition
graph, which is solved exactly.

A second, independent exact route checks lambda = 2 alone through the
integer determinant of 2I - M.  Both deciders are kept and cross-checked:
the determinant shortcut is conclusive only when some digit fixes the base
selector with zero sign, while the congruence method covers every case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linrep import SignedPermutation
from .words import CapacityError, DomainError

DEFAULT_DENSE_LIMIT = 4096
_BAREISS_LIMIT = 40


@dataclass
class RadiusEstimate:
    """Spectral radius estimate with the tolerance actually attained."""

    estimate: float
    tolerance: float
    converged: bool
    squarings: int


@dataclass
class SpectralVerdict:
    """Outcome of the exact modulus-2 decision, plus optional radius data.

    ``phase_exponents`` lists every q with 2 * omega^q an eigenvalue, where
    omega is a primitive root of unity of order ``phase_order``.  The
    witness, when present, gives per-position phases p_i such that the
    vector (omega^p_i)_i is a shared eigenvector of both matrices.
    """

    has_modulus_two: bool
    phase_order: int
    phase_exponents: list[int]
    witness: list[int] | None
    radius_estimate: float | None = None
    radius_tolerance: float | None = None


def cycle_minus_counts(m: SignedPermutation) -> list[int]:
    """Number of -1 entries met along each cycle of the permutation."""
    return [sum(1 for i in cyc if m.signs[i] < 0) for cyc in m.cycles()]


def sign_cycle_eigenvalue_one(m: SignedPermutation) -> bool:
    """Whether every cycle carries an even number of -1 entries.

    True exactly when the matrix has an eigenvector with eigenvalue 1 whose
    entries are all nonzero.
    """
    return all(c % 2 == 0 for c in cycle_minus_counts(m))


def _merge_congruence(r: int, mod: int, r2: int, mod2: int) -> tuple[int, int] | None:
    """Intersect q = r (mod), q = r2 (mod2); None when incompatible."""
    g = math.gcd(mod, mod2)
    if (r2 - r) % g:
        return None
    lcm = mod // g * mod2
    t = ((r2 - r) // g * pow(mod // g, -1, mod2 // g)) % (mod2 // g)
    return (r + mod * t) % lcm, lcm


def detect_modulus_two(m0: SignedPermutation,
                       m1: SignedPermutation) -> SpectralVerdict:
    """Decide exactly whether m0 + m1 has an eigenvalue of modulus 2.

    Phase potentials are propagated over a spanning tree of the two-colored
    transition graph; each remaining edge contributes one congruence
    (edge count) * q = (sign offset) modulo the phase order, and the system
    is solved exactly.
    """
    n = m0.size
    if m1.size != n:
        raise DomainError("matrices must have equal size")
    order = 2 * math.lcm(*(len(c) for m in (m0, m1) for c in m.cycles()))
    half = order // 2

    alpha = [-1] * n
    beta = [0] * n
    alpha[0] = 0
    queue = [0]
    congruences: list[tuple[int, int]] = []
    head = 0
    while head < len(queue):
        i = queue[head]
        head += 1
        for m in (m0, m1):
            j = m.perm[i]
            off = 0 if m.signs[i] > 0 else half
            if alpha[j] < 0:
                alpha[j] = alpha[i] + 1
                beta[j] = (beta[i] + off) % order
                queue.append(j)
            else:
                a = (alpha[i] + 1 - alpha[j]) % order
                b = (beta[j] - beta[i] - off) % order
                congruences.append((a, b))
    if len(queue) != n:
        raise RuntimeError("transition graph is not connected")

    r, mod = 0, 1
    for a, b in congruences:
        if a == 0:
            if b:
                return SpectralVerdict(False, order, [], None)
            continue
        g = math.gcd(a, order)
        if b % g:
            return SpectralVerdict(False, order, [], None)
        step = order // g
        q0 = (b // g) * pow(a // g, -1, step) % step
        merged = _merge_congruence(r, mod, q0, step)
        if merged is None:
            return SpectralVerdict(False, order, [], None)
        r, mod = merged

    exponents = list(range(r, order, mod))
    witness = [(alpha[i] * r + beta[i]) % order for i in range(n)]
    _verify_witness(m0, m1, r, witness, order)
    return SpectralVerdict(True, order, exponents, witness)


def _verify_witness(m0: SignedPermutation, m1: SignedPermutation,
                    q: int, phases: list[int], order: int) -> None:
    half = order // 2
    for m in (m0, m1):
        for i in range(m.size):
            off = 0 if m.signs[i] > 0 else half
            if (phases[m.perm[i]] - phases[i] - q - off) % order:
                raise RuntimeError("phase witness fails an edge constraint")


def two_i_minus_m(rows: list[list[int]]) -> list[list[int]]:
    """The integer matrix 2I - M for a dense M."""
    out = [[-x for x in row] for row in rows]
    for i in range(len(rows)):
        out[i][i] += 2
    return out


def _det_bareiss(a: list[list[int]]) -> int:
    """Fraction-free elimination; exact over the integers."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for 64-bit inputs
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes(start: int):
    p = start | 1
    while True:
        if _is_prime(p):
            yield p
        p += 2


def _det_mod(mat: np.ndarray, p: int) -> int:
    a = np.mod(mat, p).astype(np.int64)
    n = a.shape[0]
    det = 1
    for k in range(n):
        nz = np.nonzero(a[k:, k])[0]
        if nz.size == 0:
            return 0
        piv = int(nz[0]) + k
        if piv != k:
            a[[k, piv]] = a[[piv, k]]
            det = -det
        pv = int(a[k, k])
        det = det * pv % p
        if k + 1 < n:
            inv = pow(pv, p - 2, p)
            factors = a[k + 1:, k] * inv % p
            a[k + 1:, k:] = (a[k + 1:, k:] - factors[:, None] * a[k, k:]) % p
    return det % p


def _det_crt(rows: list[list[int]]) -> int:
    # exact determinant by residues modulo enough primes to clear the
    # Hadamard bound, then signed reconstruction
    n = len(rows)
    bound = 2
    for row in rows:
        norm_sq = sum(x * x for x in row)
        if norm_sq == 0:
            return 0
        bound *= math.isqrt(norm_sq) + 1
    mat = np.array(rows, dtype=np.int64)
    residue = 0
    modulus = 1
    for p in _primes(1 << 29):
        r = _det_mod(mat, p)
        t = (r - residue) * pow(modulus % p, -1, p) % p
        residue += modulus * t
        modulus *= p
        if modulus > bound:
            break
    if residue > modulus // 2:
        residue -= modulus
    return residue


def exact_determinant(rows: list[list[int]]) -> int:
    """Exact integer determinant of a dense integer matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("matrix must be square")
    if n == 0:
        return 1
    if n <= _BAREISS_LIMIT:
        return _det_bareiss([list(r) for r in rows])
    return _det_crt(rows)


def eigenvalue_two_by_determinant(rows: list[list[int]],
                                  dense_limit: int = DEFAULT_DENSE_LIMIT) -> bool:
    """Whether det(2I - M) = 0 for the dense integer matrix M.

    Equivalent to the presence of a modulus-2 eigenvalue whenever some digit
    fixes the orbit's base selector with zero sign (always the case for the
    canonical base selector); outside that situation it only tests the
    eigenvalue 2 itself.
    """
    if len(rows) > dense_limit:
        raise CapacityError(f"dense determinant capped at size {dense_limit}")
    return exact_determinant(two_i_minus_m(rows)) == 0


def spectral_radius_estimate(rows, tol: float = 1e-4,
                             max_squarings: int = 60) -> RadiusEstimate:
    """Estimate the spectral radius via norms of repeated squares.

    Tracks ||M^(2^k)||^(1/2^k), renormalizing after every squaring to avoid
    overflow; the sequence decreases to the spectral radius.  Stops once two
    successive estimates differ by less than tol, else reports the best
    bracket with converged=False.
    """
    a = np.array(rows, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix must be square")
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    nrm = float(np.linalg.norm(a, 2)) if a.size else 0.0
    if nrm == 0.0:
        return RadiusEstimate(0.0, 0.0, True, 0)
    log_scale = math.log2(nrm)
    a /= nrm
    exponent = 1
    estimate = 2.0 ** (log_scale / exponent)
    delta = math.inf
    for k in range(1, max_squarings + 1):
        a = a @ a
        exponent *= 2
        log_scale *= 2
        nrm = float(np.linalg.norm(a, 2))
        if nrm == 0.0:
            return RadiusEstimate(0.0, 0.0, True, k)
        log_scale += math.log2(nrm)
        a /= nrm
        new_estimate = 2.0 ** (log_scale / exponent)
        delta = abs(new_estimate - estimate)
        estimate = new_estimate
        if delta < tol:
            return RadiusEstimate(estimate, delta, True, k)
    return RadiusEstimate(estimate, delta, False, max_squarings)


def growth_exponent(verdict: SpectralVerdict) -> float:
    """log2 of the spectral radius: the certified growth exponent.

    When no modulus-2 eigenvalue exists, partial-sum norms grow at most like
    N^e for any e above this value.
    """
    if verdict.radius_estimate is not None:
        return math.log2(verdict.radius_estimate)
    if verdict.has_modulus_two:
        return 1.0
    raise DomainError("no spectral radius estimate available")
