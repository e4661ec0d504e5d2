"""Brute-force reference implementations the tests pin expected values with.

Everything here works on plain strings and itertools enumeration so that it
shares no code path with the package internals it is used to check.
"""

from itertools import combinations


def expansion_str(n: int) -> str:
    return format(n, "b") if n else "0"


def brute_count_subword(pattern: str, text: str) -> int:
    if not pattern:
        return 1
    hits = 0
    for combo in combinations(range(len(text)), len(pattern)):
        if all(text[j] == pattern[t] for t, j in enumerate(combo)):
            hits += 1
    return hits


def brute_count_factor(pattern: str, text: str) -> int:
    return sum(1 for i in range(len(text) - len(pattern) + 1)
               if text[i:i + len(pattern)] == pattern)


def brute_bracket(w: str, u: str, n: int) -> int:
    text = expansion_str(n)
    total = 0
    for i, sel in enumerate(u, start=1):
        if sel == "1":
            total += brute_count_subword(w[:i], text)
    return total % 2


def full_cycle_table(step_fn, length: int) -> dict[int, int]:
    """Cycle length of every selector bitmask under one step map."""
    size = 1 << length
    table: dict[int, int] = {}
    for start in range(size):
        if start in table:
            continue
        cyc = [start]
        cur = step_fn(start)
        while cur != start:
            cyc.append(cur)
            cur = step_fn(cur)
        for v in cyc:
            table[v] = len(cyc)
    return table
