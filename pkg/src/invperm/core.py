"""
Fundamental objects: permutations of [n], inversion sequences, and sets of
positions.

Conventions used throughout the package:

- Positions and values are 1-based in every public interface, so worked
  examples can be written down exactly as they appear in the combinatorics
  literature.  Internal indexing into ``entries`` tuples is plain 0-based
  Python; the conversion happens at the boundary.
- All objects are immutable values.  Every operation is a pure function, so
  values can be shared freely between concurrent workers.
- Empty objects (n = 0) are legal everywhere and map to empty objects.

>>> theta(Permutation((3, 2, 1)))
InversionSequence((0, 1, 2))
>>> inverse(Permutation((2, 3, 1)))
Permutation((3, 1, 2))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ValidationError",
    "InternalInvariantError",
    "Permutation",
    "InversionSequence",
    "PositionSet",
    "make_permutation",
    "make_inversion_sequence",
    "theta",
    "inverse",
]


class ValidationError(ValueError):
    """An input word violates a construction invariant."""


class InternalInvariantError(RuntimeError):
    """An algorithm reached a state its correctness argument rules out.

    Raised for example when the outline labeling stalls before every step
    carries a label.  This is always a bug, never a property of the input.
    """


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation.

    ``entries[i]`` is the value at 1-based position ``i + 1``.

    >>> Permutation((2, 1)).entries
    (2, 1)
    >>> Permutation((1, 1))
    Traceback (most recent call last):
        ...
    invperm.core.ValidationError: entry 1 at position 2 repeats an earlier value
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        seen = [False] * (n + 1)
        for idx, v in enumerate(self.entries):
            if not 1 <= v <= n:
                raise ValidationError(
                    f"entry {v} at position {idx + 1} is outside [{n}]"
                )
            if seen[v]:
                raise ValidationError(
                    f"entry {v} at position {idx + 1} repeats an earlier value"
                )
            seen[v] = True

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def value_at(self, i: int) -> int:
        """Value at 1-based position ``i``."""
        return self.entries[i - 1]

    def position_of(self, v: int) -> int:
        """1-based position of value ``v``."""
        return self.entries.index(v) + 1

    def encode(self) -> str:
        return ",".join(str(v) for v in self.entries)

    @classmethod
    def decode(cls, text: str) -> "Permutation":
        return cls(_parse_csv(text))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"Permutation({self.entries!r})"


@dataclass(frozen=True)
class InversionSequence:
    """A word e_1 .. e_n with 0 <= e_i <= i - 1.

    >>> InversionSequence((0, 1, 0)).entries
    (0, 1, 0)
    >>> InversionSequence((0, 2))
    Traceback (most recent call last):
        ...
    invperm.core.ValidationError: entry 2 at position 2 must lie in [0, 1]
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        for idx, v in enumerate(self.entries):
            if not 0 <= v <= idx:
                raise ValidationError(
                    f"entry {v} at position {idx + 1} must lie in [0, {idx}]"
                )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def value_at(self, i: int) -> int:
        """Value at 1-based position ``i``."""
        return self.entries[i - 1]

    def encode(self) -> str:
        return ",".join(str(v) for v in self.entries)

    @classmethod
    def decode(cls, text: str) -> "InversionSequence":
        return cls(_parse_csv(text))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"InversionSequence({self.entries!r})"


@dataclass(frozen=True)
class PositionSet:
    """A subset of {1, .., n} with bitmask semantics.

    Python integers act as arbitrarily wide bitmasks, so the same
    representation is a single machine word for n <= 64 and degrades
    gracefully beyond that.

    >>> s = PositionSet.from_iterable(3, [3, 1])
    >>> s.members()
    (1, 3)
    >>> len(s), 1 in s, 2 in s
    (2, True, False)
    >>> s.encode()
    '{1,3}'
    """

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError("universe size must be non-negative")
        if self.mask < 0 or self.mask >> self.n:
            raise ValidationError(f"member outside universe [{self.n}]")

    @classmethod
    def from_iterable(cls, n: int, members: Iterable[int]) -> "PositionSet":
        mask = 0
        for i in members:
            if not 1 <= i <= n:
                raise ValidationError(f"member {i} outside universe [{n}]")
            mask |= 1 << (i - 1)
        return cls(n, mask)

    def members(self) -> tuple[int, ...]:
        """Ascending tuple of 1-based members."""
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n and bool(self.mask >> (i - 1) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def encode(self) -> str:
        return "{" + ",".join(str(i) for i in self.members()) + "}"

    @classmethod
    def decode(cls, n: int, text: str) -> "PositionSet":
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValidationError(f"not a position-set encoding: {text!r}")
        inner = text[1:-1].strip()
        members = [int(part) for part in inner.split(",")] if inner else []
        return cls.from_iterable(n, members)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"PositionSet({self.n}, {{{','.join(map(str, self.members()))}}})"


def _parse_csv(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"not a comma-separated integer word: {text!r}") from exc


def make_permutation(word: Sequence[int]) -> Permutation:
    """Validate ``word`` as one-line notation and wrap it."""
    return Permutation(tuple(word))


def make_inversion_sequence(word: Sequence[int]) -> InversionSequence:
    """Validate ``word`` as an inversion sequence and wrap it."""
    return InversionSequence(tuple(word))


def theta(p: Permutation) -> InversionSequence:
    """The classical coding: e_i counts earlier entries larger than p_i.

    The entry sum equals the inversion number of ``p``, and descents of
    ``p`` become ascents of the coding.

    >>> theta(Permutation((1, 2, 3)))
    InversionSequence((0, 0, 0))
    """
    w = p.entries
    return InversionSequence(
        tuple(sum(1 for j in range(i) if w[j] > w[i]) for i in range(len(w)))
    )


def inverse(p: Permutation) -> Permutation:
    """Group inverse: position i of value v becomes value i at position v."""
    out = [0] * len(p)
    for i, v in enumerate(p.entries, 1):
        out[v - 1] = i
    return Permutation(tuple(out))
