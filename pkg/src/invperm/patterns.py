"""
Pattern containment on arbitrary integer words and streaming enumeration of
avoidance classes.

A word W contains a pattern P when some subsequence of W taken at strictly
increasing indices is order isomorphic to P, where order isomorphism matches
the full trichotomy: every pair of pattern letters compares (<, =, >) exactly
as the corresponding word letters do.  Equal pattern letters therefore
require equal word letters, which makes the same definition usable both for
permutation patterns and for patterns in inversion sequences such as 021.

Enumeration is deterministic: classes stream in lexicographic order of the
one-line word, and prefixes are pruned as soon as they contain a pattern.
"""

from __future__ import annotations

import os
from bisect import bisect_left, insort
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .core import InversionSequence, Permutation, ValidationError

__all__ = [
    "Pattern",
    "parse_patterns",
    "contains",
    "avoids_all",
    "enumerate_avoiding_permutations",
    "enumerate_avoiding_inversion_sequences",
    "enumerate_all_inversion_sequences",
    "cache_filename",
    "write_cache",
    "read_cache",
    "CACHE_ENV_VAR",
]

CACHE_ENV_VAR = "INVPERM_CACHE_DIR"


@dataclass(frozen=True)
class Pattern:
    """An integer word acting as a pattern (length k >= 1)."""

    word: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.word) < 1:
            raise ValidationError("pattern must have length >= 1")
        if any(v < 0 for v in self.word):
            raise ValidationError("pattern letters must be non-negative")

    def __len__(self) -> int:
        return len(self.word)

    @classmethod
    def from_string(cls, text: str) -> "Pattern":
        """Parse '021' or '2413' (single digits) or '10,2,1' (comma form)."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(p) for p in text.split(",")))
        if not text.isdigit():
            raise ValidationError(f"not a pattern: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        if all(v < 10 for v in self.word):
            return "".join(str(v) for v in self.word)
        return ",".join(str(v) for v in self.word)


def parse_patterns(text: str) -> tuple[Pattern, ...]:
    """Parse a comma-separated pattern list such as '2413,4213'."""
    text = text.strip()
    if not text:
        return ()
    return tuple(Pattern.from_string(part) for part in text.split(","))


def _as_word(word) -> tuple[int, ...]:
    if isinstance(word, (Permutation, InversionSequence)):
        return word.entries
    return tuple(word)


def contains(word, pat: Pattern | Sequence[int]) -> bool:
    """True when some subsequence of ``word`` is order isomorphic to ``pat``.

    Backtracks over index choices, pruning branches that cannot still place
    the remaining pattern letters.
    """
    w = _as_word(word)
    p = pat.word if isinstance(pat, Pattern) else tuple(pat)
    return _contains(w, p)


def _sgn(a: int, b: int) -> int:
    return (a > b) - (a < b)


def _contains(w: tuple[int, ...], p: tuple[int, ...]) -> bool:
    n, k = len(w), len(p)
    if k > n:
        return False
    chosen: list[int] = []

    def place(a: int, start: int) -> bool:
        if a == k:
            return True
        # prune: not enough letters left for the rest of the pattern
        for i in range(start, n - (k - a) + 1):
            if all(
                _sgn(w[chosen[b]], w[i]) == _sgn(p[b], p[a])
                for b in range(a)
            ):
                chosen.append(i)
                if place(a + 1, i + 1):
                    return True
                chosen.pop()
        return False

    return place(0, 0)


def avoids_all(word, pats: Iterable[Pattern | Sequence[int]]) -> bool:
    """True when ``word`` contains none of the patterns."""
    return not any(contains(word, p) for p in pats)


# ---------------------------------------------------------------------------
# enumeration of avoiding permutations
#
# The search appends values to a growing prefix in increasing order, which
# makes the output stream lexicographic.  Whether appending is allowed
# depends only on the relative order (standardization) of the prefix and the
# rank of the new value, so allowed-rank sets are memoized per pattern list.

_RANK_TABLES: dict[tuple, dict[tuple[int, ...], frozenset[int]]] = {}


def _pattern_key(pats: Sequence[Pattern]) -> tuple:
    return tuple(sorted(p.word for p in pats))


def _occurs_ending_at_last(w: tuple[int, ...], p: tuple[int, ...]) -> bool:
    """Pattern occurrence whose final letter is the final letter of ``w``."""
    n, k = len(w), len(p)
    if k > n:
        return False
    last = n - 1
    chosen: list[int] = []

    def place(a: int, start: int) -> bool:
        if a == k - 1:
            return all(
                _sgn(w[chosen[b]], w[last]) == _sgn(p[b], p[k - 1]) for b in range(a)
            )
        for i in range(start, last - (k - 1 - a) + 1):
            if all(_sgn(w[chosen[b]], w[i]) == _sgn(p[b], p[a]) for b in range(a)):
                chosen.append(i)
                if place(a + 1, i + 1):
                    return True
                chosen.pop()
        return False

    return place(0, 0)


def _allowed_ranks(
    canon: tuple[int, ...], pats_key: tuple, pats: Sequence[tuple[int, ...]]
) -> frozenset[int]:
    """Ranks r in [p+1] whose append keeps a prefix of shape ``canon`` clean.

    ``canon`` is the standardization of the prefix (a permutation of [p]);
    appending a value of rank r bumps the larger entries and appends r.
    """
    table = _RANK_TABLES.setdefault(pats_key, {})
    cached = table.get(canon)
    if cached is not None:
        return cached
    p = len(canon)
    allowed = []
    for r in range(1, p + 2):
        child = tuple(v if v < r else v + 1 for v in canon) + (r,)
        if not any(_occurs_ending_at_last(child, pat) for pat in pats):
            allowed.append(r)
    result = frozenset(allowed)
    table[canon] = result
    return result


def enumerate_avoiding_permutations(
    n: int,
    pats: Sequence[Pattern],
    prefix: Sequence[int] = (),
) -> Iterator[Permutation]:
    """Stream S_n(pats) in lexicographic order of one-line notation.

    ``prefix`` restricts the stream to completions of the given first
    entries, which is how exhaustive sweeps partition work across workers;
    concatenating partition streams in prefix order reproduces the full
    lexicographic stream.
    """
    if n < 0:
        raise ValidationError("n must be >= 0")
    pats = tuple(pats)
    key = _pattern_key(pats)
    pat_words = [p.word for p in pats]

    prefix = tuple(prefix)
    if len(set(prefix)) != len(prefix) or any(not 1 <= v <= n for v in prefix):
        raise ValidationError(f"invalid prefix {prefix!r} for [{n}]")

    used_sorted: list[int] = []
    canon: tuple[int, ...] = ()
    word: list[int] = []
    for v in prefix:
        r = bisect_left(used_sorted, v) + 1
        if r not in _allowed_ranks(canon, key, pat_words):
            return  # prefix itself contains a pattern: empty stream
        canon = tuple(c if c < r else c + 1 for c in canon) + (r,)
        insort(used_sorted, v)
        word.append(v)

    unused = sorted(set(range(1, n + 1)) - set(prefix))

    def rec(canon: tuple[int, ...]) -> Iterator[Permutation]:
        if len(word) == n:
            yield Permutation(tuple(word))
            return
        allowed = _allowed_ranks(canon, key, pat_words)
        for idx in range(len(unused)):
            v = unused[idx]
            if v == 0:
                continue
            r = bisect_left(used_sorted, v) + 1
            if r not in allowed:
                continue
            child = tuple(c if c < r else c + 1 for c in canon) + (r,)
            insort(used_sorted, v)
            unused[idx] = 0
            word.append(v)
            yield from rec(child)
            word.pop()
            unused[idx] = v
            del used_sorted[bisect_left(used_sorted, v)]

    yield from rec(canon)


# ---------------------------------------------------------------------------
# enumeration of inversion sequences

def enumerate_all_inversion_sequences(n: int) -> Iterator[InversionSequence]:
    """All of I_n in lexicographic order (n! sequences)."""
    if n < 0:
        raise ValidationError("n must be >= 0")

    word: list[int] = []

    def rec(i: int) -> Iterator[InversionSequence]:
        if i > n:
            yield InversionSequence(tuple(word))
            return
        for v in range(i):
            word.append(v)
            yield from rec(i + 1)
            word.pop()

    yield from rec(1)


def _is_021_pattern_set(pats: Sequence[Pattern]) -> bool:
    return len(pats) == 1 and pats[0].word == (0, 2, 1)


def enumerate_avoiding_inversion_sequences(
    n: int,
    pats: Sequence[Pattern],
    prefix: Sequence[int] = (),
) -> Iterator[InversionSequence]:
    """Stream I_n(pats) in lexicographic order.

    For the single pattern 021 a structural fast path is used: a sequence
    avoids 021 exactly when its positive entries are weakly increasing, so
    entry i may be 0 or anything in [max so far, i-1].  Other pattern lists
    filter the full lexicographic stream of I_n.
    """
    if n < 0:
        raise ValidationError("n must be >= 0")
    pats = tuple(pats)
    prefix = tuple(prefix)
    for i, v in enumerate(prefix, 1):
        if not 0 <= v <= i - 1:
            raise ValidationError(f"invalid prefix entry {v} at position {i}")

    if _is_021_pattern_set(pats):
        yield from _enumerate_021_avoiding(n, prefix)
        return

    word = list(prefix)
    if not avoids_all(word, pats):
        return

    def rec(i: int) -> Iterator[InversionSequence]:
        if i > n:
            yield InversionSequence(tuple(word))
            return
        for v in range(i):
            word.append(v)
            if avoids_all(word, pats):
                yield from rec(i + 1)
            word.pop()

    yield from rec(len(prefix) + 1)


def _enumerate_021_avoiding(n: int, prefix: tuple[int, ...]) -> Iterator[InversionSequence]:
    word = list(prefix)
    mx = 0
    for v in word:
        if v != 0 and v < mx:
            return  # prefix already violates weakly increasing positives
        mx = max(mx, v)

    def rec(i: int, mx: int) -> Iterator[InversionSequence]:
        if i > n:
            yield InversionSequence(tuple(word))
            return
        lo = mx if mx > 0 else 1
        for v in [0] + list(range(lo, i)):
            word.append(v)
            yield from rec(i + 1, max(mx, v))
            word.pop()

    yield from rec(len(prefix) + 1, mx)


# ---------------------------------------------------------------------------
# cache files: newline-delimited encoded objects

def cache_filename(kind: str, n: int, pats: Sequence[Pattern]) -> str:
    tags = "-".join(str(p) for p in pats) if pats else "none"
    return f"{kind}_n{n}_avoid{tags}.txt"


def cache_directory() -> Path:
    return Path(os.environ.get(CACHE_ENV_VAR, ".invperm-cache"))


def write_cache(
    directory: Path | str, kind: str, n: int, pats: Sequence[Pattern]
) -> Path:
    """Enumerate a class and spill it to a cache file; returns the path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / cache_filename(kind, n, pats)
    if kind == "perm":
        stream = enumerate_avoiding_permutations(n, pats)
    elif kind == "invseq":
        stream = enumerate_avoiding_inversion_sequences(n, pats)
    else:
        raise ValidationError(f"unknown kind {kind!r}")
    tmp = path.with_suffix(".tmp")
    with tmp.open("w") as fh:
        for obj in stream:
            fh.write(obj.encode() + "\n")
    tmp.replace(path)
    return path


def read_cache(path: Path | str, kind: str):
    """Load a cache file back into validated objects."""
    cls = {"perm": Permutation, "invseq": InversionSequence}.get(kind)
    if cls is None:
        raise ValidationError(f"unknown kind {kind!r}")
    with Path(path).open() as fh:
        return [cls.decode(line) for line in fh if line.strip()]
