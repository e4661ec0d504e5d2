"""Command-line surface: analyze, sums, orbit, matrix, sweep, verify.

Exit codes are part of the contract: 0 success, 1 verification failure,
2 parse/argument error, 3 overflow/capacity, 4 I/O failure.  All commands
are deterministic given their arguments and configuration; repeated runs
emit byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .words import (ArityError, BinaryWord, CapacityError, DomainError,
                    WordParseError, canonical_base)
from .counting import count_factor, count_subword
from .dynamics import cycle_length, orbit
from .linrep import build_matrices, constant_c, dense_sum, partial_sum_fast
from .certify import (VERDICT_PROVED_NOT_P, VERDICT_PROVED_P, check_one_run,
                      classify, _is_pow2, _letter)

MAX_SUM_ENDPOINT = 1 << 62

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_OVERFLOW = 3
EXIT_IO = 4


@dataclass
class RunConfig:
    """Tunable limits; round-trips losslessly through key=value text files."""

    max_word_length: int = 20
    dense_limit: int = 4096
    direct_sum_limit: int = 1 << 26
    gelfand_tol: float = 1e-4
    sweep_parallelism: int = os.cpu_count() or 1
    output_format: str = "json"

    def validate(self) -> None:
        for f in fields(self):
            if f.type in ("int", "float") and getattr(self, f.name) <= 0:
                raise DomainError(f"{f.name} must be positive")
        if self.output_format not in ("json", "csv", "text"):
            raise DomainError("output_format must be json, csv or text")

    def save(self, path: str) -> None:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            text = repr(value) if isinstance(value, float) else str(value)
            lines.append(f"{f.name}={text}")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path: str) -> "RunConfig":
        kwargs = {}
        types = {f.name: f.type for f in fields(cls)}
        with open(path) as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise DomainError(f"bad config line: {line!r}")
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in types:
                    raise DomainError(f"unknown config key: {key}")
                caster = {"int": int, "float": float, "str": str}[types[key]]
                kwargs[key] = caster(value.strip())
        cfg = cls(**kwargs)
        cfg.validate()
        return cfg


def _load_config(args) -> RunConfig:
    if getattr(args, "config", None):
        return RunConfig.load(args.config)
    return RunConfig()


def _parse_count(text: str) -> int:
    """Endpoint arguments accept plain integers or power forms like 2^40."""
    text = text.strip()
    for sep in ("^", "**"):
        if sep in text:
            base, _, exp = text.partition(sep)
            return int(base) ** int(exp)
    return int(text)


def _parse_word(text: str) -> BinaryWord:
    return BinaryWord.parse(text)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    cfg = _load_config(args)
    w = _parse_word(args.word)
    u = _parse_word(args.u) if args.u is not None else None
    report = classify(w, u, dense_limit=cfg.dense_limit,
                      gelfand_tol=cfg.gelfand_tol,
                      max_length=cfg.max_word_length)
    data = report.to_dict()
    if cfg.output_format == "text":
        for key, value in data.items():
            print(f"{key}: {json.dumps(value)}")
    elif cfg.output_format == "csv":
        keys = ["word", "u", "orbit_size", "verdict", "det_2I_minus_M",
                "exponent_certified", "exponent_empirical"]
        print(",".join(keys))
        print(",".join("" if data[k] is None else str(data[k]) for k in keys))
    else:
        print(json.dumps(data, indent=2))
    return EXIT_OK


def _sample_points(n_top: int, stride: str) -> list[int]:
    if stride == "arithmetic":
        step = max(1, n_top // 1024)
        points = list(range(0, n_top + 1, step))
        if points[-1] != n_top:
            points.append(n_top)
        return points
    # geometric: powers of two, and one less (the endpoints the doubling
    # structure distinguishes), capped by and always including n_top
    points = {n_top}
    e = 0
    while (1 << e) <= n_top:
        points.add(1 << e)
        if (1 << e) - 1 >= 1:
            points.add((1 << e) - 1)
        e += 1
    if (1 << e) - 1 <= n_top:
        points.add((1 << e) - 1)
    return sorted(points)


def cmd_sums(args) -> int:
    w = _parse_word(args.word)
    n_top = _parse_count(args.to)
    if n_top < 0:
        raise DomainError("--to must be non-negative")
    if n_top > MAX_SUM_ENDPOINT:
        raise CapacityError(f"--to exceeds {MAX_SUM_ENDPOINT}")
    orb = orbit(w, canonical_base(w.length))
    print("n,S_n")
    for n in _sample_points(n_top, args.stride):
        print(f"{n},{partial_sum_fast(orb, n)[0]}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    w = _parse_word(args.word)
    u = _parse_word(args.u) if args.u is not None else canonical_base(w.length)
    for line in orbit(w, u).dump_lines():
        print(line)
    return EXIT_OK


def cmd_matrix(args) -> int:
    w = _parse_word(args.word)
    u = _parse_word(args.u) if args.u is not None else canonical_base(w.length)
    rows = dense_sum(*build_matrices(orbit(w, u)))
    width = max(len(str(x)) for row in rows for x in row)
    for row in rows:
        print(" ".join(str(x).rjust(width) for x in row))
    return EXIT_OK


def _sweep_line(task: tuple[str, int, float, int]) -> str:
    text, dense_limit, tol, max_length = task
    report = classify(BinaryWord.parse(text), dense_limit=dense_limit,
                      gelfand_tol=tol, max_length=max_length)
    return json.dumps(report.to_dict())


def cmd_sweep(args) -> int:
    cfg = _load_config(args)
    max_len = args.maxlen
    if not 2 <= max_len <= cfg.max_word_length:
        raise DomainError(f"--maxlen must lie in 2..{cfg.max_word_length}")
    tasks = []
    for length in range(2, max_len + 1):
        for value in range(1 << length):
            tasks.append((str(BinaryWord(length, value)), cfg.dense_limit,
                          cfg.gelfand_tol, cfg.max_word_length))
    if cfg.sweep_parallelism > 1 and len(tasks) >= 16:
        with ProcessPoolExecutor(max_workers=cfg.sweep_parallelism) as pool:
            lines = list(pool.map(_sweep_line, tasks, chunksize=16))
    else:
        lines = [_sweep_line(t) for t in tasks]
    counts: dict[str, int] = {}
    for line in lines:
        verdict = json.loads(line)["verdict"]
        counts[verdict] = counts.get(verdict, 0) + 1
    summary = {"summary": {k: counts[k] for k in sorted(counts)},
               "total": len(lines)}
    lines.append(json.dumps(summary))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# the reference fixture suite


def _fixture_counts() -> None:
    w = BinaryWord.parse("10")
    assert count_subword(w, 26) == 5, "scattered count of 10 in 11010"
    assert count_factor(w, 26) == 2, "factor count of 10 in 11010"


def _fixture_orbit() -> None:
    orb = orbit(BinaryWord.parse("011"), BinaryWord.parse("001"))
    got = [str(el) for el in orb.elements]
    assert got == ["001", "011", "101", "111"], got


def _fixture_matrix() -> None:
    orb = orbit(BinaryWord.parse("011"), BinaryWord.parse("001"))
    rows = dense_sum(*build_matrices(orb))
    expected = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, -1, 1], [1, 0, 0, -1]]
    assert rows == expected, rows


def _fixture_constant() -> None:
    orb = orbit(BinaryWord.parse("011"), BinaryWord.parse("001"))
    assert constant_c(orb) == [0, 2, 0, -2], constant_c(orb)


def _fixture_spectrum() -> None:
    orb = orbit(BinaryWord.parse("011"), BinaryWord.parse("001"))
    mags = sorted(abs(x) for x in np.linalg.eigvals(
        np.array(dense_sum(*build_matrices(orb)), dtype=float)))
    expected = [0.0, 0.0, math.sqrt(2), math.sqrt(2)]
    assert all(abs(m - e) <= 1e-6 for m, e in zip(mags, expected)), mags


def _fixture_quadrupling() -> None:
    orb = orbit(BinaryWord.parse("01"), BinaryWord.parse("01"))
    for n in range(0, 1001):
        lhs = partial_sum_fast(orb, 4 * n + 3)[0]
        rhs = 2 + 2 * partial_sum_fast(orb, n)[0]
        assert lhs == rhs, (n, lhs, rhs)


def _fixture_run_cycle_lengths() -> None:
    for a in (0, 1):
        for ell in range(2, 11):
            lam = cycle_length(_letter(a) * ell, a, canonical_base(ell))
            assert lam == 1 << (ell - 1).bit_length(), (a, ell, lam)


def _fixture_one_run_table() -> None:
    for a in (0, 1):
        for ell in range(2, 13):
            verdict = check_one_run(a, ell).verdict
            expected = VERDICT_PROVED_P if _is_pow2(ell) else VERDICT_PROVED_NOT_P
            assert verdict == expected, (a, ell, verdict)


PAPER_FIXTURES = [
    ("counts-10-in-26", _fixture_counts),
    ("orbit-011", _fixture_orbit),
    ("matrix-011", _fixture_matrix),
    ("constant-011", _fixture_constant),
    ("spectrum-011", _fixture_spectrum),
    ("quadrupling-identity-01", _fixture_quadrupling),
    ("run-cycle-lengths", _fixture_run_cycle_lengths),
    ("one-run-table", _fixture_one_run_table),
]


def cmd_verify(args, fixtures=None) -> int:
    if args.suite != "paper":
        raise DomainError(f"unknown suite: {args.suite}")
    failures = 0
    for name, fn in (fixtures if fixtures is not None else PAPER_FIXTURES):
        try:
            fn()
        except AssertionError as exc:
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"PASS {name}")
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subwordsums",
        description="Analyze partial sums of subword-counting sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one word")
    p.add_argument("word")
    p.add_argument("u", nargs="?", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sums", help="partial-sum samples as CSV")
    p.add_argument("word")
    p.add_argument("--to", required=True, help="endpoint N (accepts 2^k)")
    p.add_argument("--stride", choices=("geometric", "arithmetic"),
                   default="geometric")
    p.add_argument("--csv", action="store_true",
                   help="emit CSV (the default and only format)")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("orbit", help="orbit dump with successors and signs")
    p.add_argument("word")
    p.add_argument("u", nargs="?", default=None)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("matrix", help="dense transfer-matrix sum")
    p.add_argument("word")
    p.add_argument("u", nargs="?", default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("sweep", help="classify every word up to a length")
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the reference fixture suite")
    p.add_argument("--suite", default="paper")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (WordParseError, ArityError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry_point() -> None:
    sys.exit(main())
