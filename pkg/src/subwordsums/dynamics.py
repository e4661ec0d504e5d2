"""The two-letter word maps behind the doubling recurrences, their orbits and cycles.

For a fixed pattern w of length L and a digit a, stepping a selector word u
produces a sign bit together with the next selector:

    sign . next  =  [ (a-pattern of w, one 0 appended)  AND  u0 ]  XOR  0u

read as a word of length L+1 split into its first letter (the sign) and the
remaining L letters (the next selector), where the a-pattern is w itself for
a = 1 and the complement of w for a = 0.  Stepping with digit a tracks how
the prefix-parity bracket transforms under n -> 2n + a.

Everything here works on raw bitmasks internally; selectors are exchanged
with callers as BinaryWord values.  Orbits are immutable once built and all
queries on them are read-only, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import ArityError, BinaryWord


@dataclass(frozen=True, slots=True)
class StepResult:
    """Sign bit and successor selector produced by one step."""

    sign_bit: int
    next: BinaryWord


@dataclass(frozen=True, slots=True)
class PathResult:
    """Accumulated sign parity and final selector of a composed path."""

    parity: int
    result: BinaryWord


def _pattern(w: BinaryWord, a: int) -> int:
    """Bitmask the step with digit a matches against: w for a=1, ~w for a=0."""
    return w.bits if a else ~w.bits & ((1 << w.length) - 1)


def _step_bits(pattern: int, length: int, u_bits: int) -> tuple[int, int]:
    x = ((pattern & u_bits) << 1) ^ u_bits
    return x >> length, x & ((1 << length) - 1)


def _check_pair(w: BinaryWord, u: BinaryWord) -> None:
    if w.length != u.length or w.length == 0:
        raise ArityError("pattern and selector must be non-empty words of equal length")


def step(w: BinaryWord, a: int, u: BinaryWord) -> StepResult:
    """Apply the digit-a map of pattern w to selector u."""
    _check_pair(w, u)
    t, s = _step_bits(_pattern(w, a), w.length, u.bits)
    return StepResult(t, BinaryWord(w.length, s))


def step_inverse(w: BinaryWord, a: int, u_next: BinaryWord) -> BinaryWord:
    """The unique selector u with step(w, a, u).next == u_next.

    Solved by back-substitution from the last letter: the last letter of
    u equals the last letter of u_next, and each earlier letter follows
    from the one already recovered to its right.
    """
    _check_pair(w, u_next)
    p = _pattern(w, a)
    length = w.length
    u = 0
    for t in range(length):
        carry = (p >> (t - 1)) & (u >> (t - 1)) & 1 if t else 0
        u |= (((u_next.bits >> t) & 1) ^ carry) << t
    return BinaryWord(length, u)


def apply_path(w: BinaryWord, h: BinaryWord, u: BinaryWord) -> PathResult:
    """Compose steps along the digit word h, rightmost letter of h acting first.

    The parity is the mod-2 sum of the sign bits collected at each step.
    An empty h is the identity with parity 0.
    """
    if h.length and w.length != u.length:
        raise ArityError("pattern and selector must have equal length")
    parity = 0
    cur = u.bits
    length = w.length
    mask = (1 << length) - 1
    for i in range(h.length, 0, -1):
        p = _pattern(w, h.letter(i))
        x = ((p & cur) << 1) ^ cur
        parity ^= x >> length
        cur = x & mask
    return PathResult(parity, BinaryWord(u.length, cur))


class Orbit:
    """Closure of a base selector under the two step maps of a fixed pattern.

    Elements are listed in breadth-first discovery order (0-step explored
    before 1-step), base first, which makes every derived object — matrices,
    certificates, reports — reproducible bit for bit.
    """

    __slots__ = ("w", "base", "elements", "succ0", "succ1", "sign0", "sign1",
                 "_index", "_supports", "_evaluator")

    def __init__(self, w: BinaryWord, base: BinaryWord):
        _check_pair(w, base)
        if w.length < 2:
            raise ArityError("orbits are built for words of length at least 2")
        length = w.length
        mask = (1 << length) - 1
        p0 = _pattern(w, 0)
        p1 = _pattern(w, 1)
        elems = [base.bits]
        index = {base.bits: 0}
        succ0: list[int] = []
        succ1: list[int] = []
        sign0: list[int] = []
        sign1: list[int] = []
        i = 0
        while i < len(elems):
            b = elems[i]
            for pat, succ, sign in ((p0, succ0, sign0), (p1, succ1, sign1)):
                x = ((pat & b) << 1) ^ b
                s = x & mask
                j = index.get(s)
                if j is None:
                    j = len(elems)
                    index[s] = j
                    elems.append(s)
                succ.append(j)
                sign.append(x >> length)
            i += 1
        self.w = w
        self.base = base
        self.elements = tuple(BinaryWord(length, b) for b in elems)
        self.succ0 = tuple(succ0)
        self.succ1 = tuple(succ1)
        self.sign0 = tuple(sign0)
        self.sign1 = tuple(sign1)
        self._index = index
        self._supports: tuple[int, ...] | None = None
        self._evaluator = None

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Orbit(w={self.w!s}, base={self.base!s}, size={len(self)})"

    def position(self, u: BinaryWord) -> int:
        """Index of u in discovery order; KeyError if u is not in the orbit."""
        return self._index[u.bits]

    def __contains__(self, u: BinaryWord) -> bool:
        return u.length == self.w.length and u.bits in self._index

    def successors(self, a: int) -> tuple[int, ...]:
        return self.succ1 if a else self.succ0

    def signs(self, a: int) -> tuple[int, ...]:
        return self.sign1 if a else self.sign0

    def cycles(self, a: int) -> list[list[int]]:
        """Cycle decomposition of the digit-a permutation, as position lists.

        Each cycle starts at its first-discovered element and cycles are
        ordered by that element, so the decomposition is deterministic.
        """
        succ = self.successors(a)
        seen = [False] * len(succ)
        out: list[list[int]] = []
        for start in range(len(succ)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = succ[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = succ[j]
            out.append(cyc)
        return out

    def cycle_lengths(self, a: int) -> list[int]:
        return [len(c) for c in self.cycles(a)]

    def dump_lines(self) -> list[str]:
        """One line per element: position, word, successor indices, sign bits."""
        return [
            f"{i} {self.elements[i]!s} S0->{self.succ0[i]} T0={self.sign0[i]} "
            f"S1->{self.succ1[i]} T1={self.sign1[i]}"
            for i in range(len(self.elements))
        ]


def orbit(w: BinaryWord, u: BinaryWord) -> Orbit:
    """Breadth-first closure of u under the two step maps of w."""
    return Orbit(w, u)


def cycle_of(w: BinaryWord, a: int, u: BinaryWord) -> list[BinaryWord]:
    """The iteration orbit of u under the digit-a map alone, starting at u."""
    _check_pair(w, u)
    p = _pattern(w, a)
    length = w.length
    mask = (1 << length) - 1
    out = [u]
    cur = ((p & u.bits) << 1 ^ u.bits) & mask
    while cur != u.bits:
        out.append(BinaryWord(length, cur))
        cur = ((p & cur) << 1 ^ cur) & mask
    return out


def cycle_length(w: BinaryWord, a: int, u: BinaryWord) -> int:
    """Length of the digit-a cycle through u (counts words, not steps)."""
    _check_pair(w, u)
    p = _pattern(w, a)
    mask = (1 << w.length) - 1
    n = 1
    cur = ((p & u.bits) << 1 ^ u.bits) & mask
    while cur != u.bits:
        n += 1
        cur = ((p & cur) << 1 ^ cur) & mask
    return n


def cycle_first_letter_parity(w: BinaryWord, a: int, u: BinaryWord) -> int:
    """Parity of the number of words in the digit-a cycle of u starting with 1."""
    top = 1 << (w.length - 1)
    return sum(1 for v in cycle_of(w, a, u) if v.bits & top) & 1


def _ceil_pow2(x: int) -> int:
    return 1 << (x - 1).bit_length()


def cycle_length_bound(w: BinaryWord, a: int) -> int:
    """Run-length upper bound on every digit-a cycle length of pattern w.

    Each maximal run of the letter a of length r contributes the least power
    of two >= r + 1, except that a run starting at the first letter of w
    contributes the least power of two >= r.  Words without the letter a are
    fixed pointwise, so the bound degenerates to 1.
    """
    if w.length == 0:
        raise ArityError("cycle bounds need a non-empty word")
    bound = 1
    pos = 1
    for letter, run in w.run_decomposition():
        if letter == a:
            cand = _ceil_pow2(run) if pos == 1 else _ceil_pow2(run + 1)
            bound = max(bound, cand)
        pos += run
    return bound
