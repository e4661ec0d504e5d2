"""Occurrence counters over binary expansions and the prefix-parity bracket.

Conventions fixed here and relied on everywhere else:

* the binary expansion of 0 is the single letter "0" (expansions of n >= 1
  carry no leading zeros), which makes the counting conventions
  ``count_subword(word("0"), 0) == 1`` and ``count_subword(empty, n) == 1``
  fall out of the definitions instead of being special cases;
* ``bracket_eval(w, u, n)`` sums, mod 2, the subword counts of the
  *prefixes of w* — w[1..i] for every position i where u has a 1.  The
  selector u only chooses which prefixes of the pattern participate.
"""

from __future__ import annotations

from .words import ArityError, BinaryWord, DomainError

_ONE_BIT = (0,)


def _expansion_bits(n: int) -> tuple[int, ...]:
    """Digits of the ordinary binary expansion of n, most significant first."""
    if n < 0:
        raise DomainError("expansions are defined for non-negative integers")
    if n == 0:
        return _ONE_BIT
    return tuple((n >> i) & 1 for i in range(n.bit_length() - 1, -1, -1))


def expansion(n: int) -> BinaryWord:
    """The ordinary binary expansion of n as a word (the expansion of 0 is "0")."""
    return BinaryWord.from_letters(_expansion_bits(n))


def count_subword(w: BinaryWord, n: int) -> int:
    """Occurrences of w as a scattered subsequence of the expansion of n.

    Exact arbitrary-precision count; the empty pattern occurs exactly once.
    """
    ell = w.length
    letters = tuple(w)
    dp = [1] + [0] * ell
    for b in _expansion_bits(n):
        for i in range(ell, 0, -1):
            if letters[i - 1] == b:
                dp[i] += dp[i - 1]
    return dp[ell]


def count_factor(w: BinaryWord, n: int) -> int:
    """Occurrences of w as consecutive digits of the expansion of n."""
    if w.length == 0:
        raise ArityError("factor counting needs a non-empty pattern")
    digits = _expansion_bits(n)
    if w.length > len(digits):
        return 0
    target = w.bits
    mask = (1 << w.length) - 1
    window = 0
    count = 0
    for pos, b in enumerate(digits):
        window = ((window << 1) | b) & mask
        if pos >= w.length - 1 and window == target:
            count += 1
    return count


def support_mask(u: BinaryWord) -> int:
    """Bitmask with bit i set (i = 1..len) exactly when letter i of u is 1."""
    m = 0
    for i in range(1, u.length + 1):
        if (u.bits >> (u.length - i)) & 1:
            m |= 1 << i
    return m


def prefix_parity_mask(w: BinaryWord, n: int) -> int:
    """Parities of the subword counts of all prefixes of w in the expansion of n.

    Bit i of the result (1 <= i <= len(w)) is count_subword(w[1..i], n) mod 2;
    bit 0 is the parity of the empty-pattern count, always 1.  Runs the
    counting recurrence over GF(2), never touching big integers.
    """
    eq1 = 0
    for i in range(1, w.length + 1):
        if (w.bits >> (w.length - i)) & 1:
            eq1 |= 1 << i
    eq = (~eq1 & (((1 << (w.length + 1)) - 1) & ~1), eq1)
    m = 1
    for b in _expansion_bits(n):
        m ^= (m << 1) & eq[b]
    return m


def subword_parity(w: BinaryWord, n: int) -> int:
    """count_subword(w, n) mod 2, via the GF(2) recurrence."""
    return (prefix_parity_mask(w, n) >> w.length) & 1


def bracket_eval(w: BinaryWord, u: BinaryWord, n: int) -> int:
    """Mod-2 sum of subword_parity(w[1..i], n) over positions i with u_i = 1."""
    if w.length != u.length or w.length == 0:
        raise ArityError("bracket needs non-empty patterns of equal length")
    return (prefix_parity_mask(w, n) & support_mask(u)).bit_count() & 1


def check_doubling_recurrences(w: BinaryWord, n_max: int) -> bool:
    """Verify the four n -> 2n, 2n+1 counting identities for 1 <= n <= n_max.

    For every such n this checks, exactly:

        count(w0, 2n)   == count(w0, n) + count(w, n)
        count(w0, 2n+1) == count(w0, n)
        count(w1, 2n)   == count(w1, n)
        count(w1, 2n+1) == count(w1, n) + count(w, n)

    The identities can fail at n = 0, which is why that case is excluded.
    Counts are produced by extending the expansion digit strings one letter
    at a time, independent of the identities being verified.
    """
    if w.length == 0:
        raise ArityError("doubling recurrences need a non-empty word")
    if n_max < 1:
        raise DomainError("n_max must be at least 1")

    def states(pattern: BinaryWord, top: int) -> list[tuple[int, ...] | None]:
        # table[n] = subsequence-count DP state after reading the expansion
        # of n; state(2n+b) extends state(n) by the digit b.
        letters = tuple(pattern)
        ell = pattern.length

        def extend(dp: tuple[int, ...], b: int) -> tuple[int, ...]:
            out = list(dp)
            for i in range(ell, 0, -1):
                if letters[i - 1] == b:
                    out[i] += out[i - 1]
            return tuple(out)

        init = (1,) + (0,) * ell
        table: list[tuple[int, ...] | None] = [None] * (top + 1)
        table[1] = extend(init, 1)
        for n in range(2, top + 1):
            table[n] = extend(table[n >> 1], n & 1)
        return table

    top = 2 * n_max + 1
    w0 = states(w + BinaryWord(1, 0), top)
    w1 = states(w + BinaryWord(1, 1), top)
    ell = w.length
    for n in range(1, n_max + 1):
        s_w = w0[n][ell]
        if w0[2 * n][ell + 1] != w0[n][ell + 1] + s_w:
            return False
        if w0[2 * n + 1][ell + 1] != w0[n][ell + 1]:
            return False
        if w1[2 * n][ell + 1] != w1[n][ell + 1]:
            return False
        if w1[2 * n + 1][ell + 1] != w1[n][ell + 1] + s_w:
            return False
        if w1[n][ell] != s_w:
            return False
    return True
