"""Finite binary words backed by a bitmask plus an explicit length.

Letters are numbered 1..length from the left, matching the convention used
throughout this package: ``letter(1)`` is the first (leftmost) letter.
Internally letter i sits in bit ``length - i`` of ``bits``, so the first
letter is the most significant bit and the empty word is ``(0, 0)``.

Words are capped at MAX_LENGTH letters so every word fits in a single
machine word; all operations on them are pure and values are immutable,
so they are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

MAX_LENGTH = 63


class CapacityError(ValueError):
    """A word or computation would exceed a configured size limit."""


class ArityError(ValueError):
    """Operands have incompatible lengths for the requested operation."""


class DomainError(ValueError):
    """Parameters lie outside the domain a construction is defined for."""


class WordParseError(ValueError):
    """Text is not a valid binary word."""


@dataclass(frozen=True, slots=True)
class BinaryWord:
    """An immutable word over {0,1} of length at most MAX_LENGTH."""

    length: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.length <= MAX_LENGTH:
            raise CapacityError(
                f"word length {self.length} outside [0, {MAX_LENGTH}]")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits do not fit the declared length")

    @classmethod
    def parse(cls, text: str) -> "BinaryWord":
        """Parse an ASCII string over {'0','1'}; '' denotes the empty word."""
        if len(text) > MAX_LENGTH:
            raise CapacityError(f"word longer than {MAX_LENGTH} letters")
        bits = 0
        for ch in text:
            if ch == "0":
                bits <<= 1
            elif ch == "1":
                bits = (bits << 1) | 1
            else:
                raise WordParseError(f"invalid letter {ch!r} in binary word")
        return cls(len(text), bits)

    @classmethod
    def from_letters(cls, letters) -> "BinaryWord":
        bits = 0
        n = 0
        for b in letters:
            if b not in (0, 1):
                raise WordParseError(f"invalid letter {b!r}")
            bits = (bits << 1) | b
            n += 1
        return cls(n, bits)

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return format(self.bits, f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        return f"BinaryWord({str(self)!r})"

    def __iter__(self) -> Iterator[int]:
        for i in range(1, self.length + 1):
            yield self.letter(i)

    def letter(self, i: int) -> int:
        """Letter at 1-based position i, counted from the left."""
        if not 1 <= i <= self.length:
            raise IndexError(f"position {i} outside 1..{self.length}")
        return (self.bits >> (self.length - i)) & 1

    @property
    def first_letter(self) -> int:
        return self.letter(1)

    @property
    def last_letter(self) -> int:
        return self.letter(self.length)

    def __add__(self, other: "BinaryWord") -> "BinaryWord":
        """Concatenation."""
        n = self.length + other.length
        if n > MAX_LENGTH:
            raise CapacityError("concatenation exceeds the word capacity")
        return BinaryWord(n, (self.bits << other.length) | other.bits)

    def __mul__(self, k: int) -> "BinaryWord":
        """k-fold concatenation with itself; k = 0 gives the empty word."""
        if k < 0:
            raise DomainError("repetition count must be non-negative")
        if k * self.length > MAX_LENGTH:
            raise CapacityError("repetition exceeds the word capacity")
        bits = 0
        for _ in range(k):
            bits = (bits << self.length) | self.bits
        return BinaryWord(k * self.length, bits)

    def __invert__(self) -> "BinaryWord":
        """Letterwise complement."""
        return BinaryWord(self.length, ~self.bits & ((1 << self.length) - 1))

    def __xor__(self, other: "BinaryWord") -> "BinaryWord":
        if self.length != other.length:
            raise ArityError("xor requires words of equal length")
        return BinaryWord(self.length, self.bits ^ other.bits)

    def __and__(self, other: "BinaryWord") -> "BinaryWord":
        if self.length != other.length:
            raise ArityError("and requires words of equal length")
        return BinaryWord(self.length, self.bits & other.bits)

    def factor(self, t: int, k: int) -> "BinaryWord":
        """The consecutive letters at positions t..k (1-based, inclusive)."""
        if not 1 <= t <= k <= self.length:
            raise IndexError(f"factor range [{t},{k}] outside 1..{self.length}")
        n = k - t + 1
        return BinaryWord(n, (self.bits >> (self.length - k)) & ((1 << n) - 1))

    def prefix(self, k: int) -> "BinaryWord":
        return self.factor(1, k) if k else BinaryWord(0, 0)

    def suffix(self, k: int) -> "BinaryWord":
        return self.factor(self.length - k + 1, self.length) if k else BinaryWord(0, 0)

    def contains_factor(self, f: "BinaryWord") -> bool:
        """Whether f occurs as consecutive letters of this word."""
        if f.length == 0:
            raise ArityError("factor pattern must be non-empty")
        if f.length > self.length:
            return False
        mask = (1 << f.length) - 1
        for shift in range(self.length - f.length + 1):
            if (self.bits >> shift) & mask == f.bits:
                return True
        return False

    def run_decomposition(self) -> list[tuple[int, int]]:
        """Maximal runs left to right as (letter, run length) pairs."""
        if self.length == 0:
            raise ArityError("the empty word has no run decomposition")
        runs: list[tuple[int, int]] = []
        cur = self.letter(1)
        count = 1
        for i in range(2, self.length + 1):
            b = self.letter(i)
            if b == cur:
                count += 1
            else:
                runs.append((cur, count))
                cur, count = b, 1
        runs.append((cur, count))
        return runs


def word(text: str) -> BinaryWord:
    """Shorthand constructor from text."""
    return BinaryWord.parse(text)


def concat(x: BinaryWord, y: BinaryWord) -> BinaryWord:
    return x + y


def power(x: BinaryWord, k: int) -> BinaryWord:
    return x * k


def complement(x: BinaryWord) -> BinaryWord:
    return ~x


def xor(x: BinaryWord, y: BinaryWord) -> BinaryWord:
    return x ^ y


def conjunction(x: BinaryWord, y: BinaryWord) -> BinaryWord:
    return x & y


def zeros(n: int) -> BinaryWord:
    return BinaryWord(n, 0)


def ones(n: int) -> BinaryWord:
    return BinaryWord(n, (1 << n) - 1)


def single_one(length: int, position: int) -> BinaryWord:
    """The length-`length` word whose only 1 sits at 1-based `position`."""
    if not 1 <= position <= length:
        raise IndexError(f"position {position} outside 1..{length}")
    return BinaryWord(length, 1 << (length - position))


def canonical_base(length: int) -> BinaryWord:
    """The distinguished selector 0^(length-1)1 used for scalar partial sums."""
    return single_one(length, length)
