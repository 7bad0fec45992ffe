"""
Two-colored Dyck paths, the outline of a 021-avoiding inversion sequence,
diagonal lines, exposed positions, and path statistics.

Geometry.  A Dyck path of length n runs from (0,0) to (n,n) using east and
north unit steps without passing above the diagonal y = x.  The i-th east
step spans [i-1, i] at height h_i; monotone lattice paths force the height
word to be weakly increasing with 0 <= h_i <= i-1.  Each east step carries a
color, black or red.

The outline of a 021-avoiding inversion sequence e is the two-colored path
with h_i = e_i on nonzero entries (black) and h_i = max(e_1..e_i) on zero
entries (red): red steps copy the running maximum.  Equivalently, a
two-colored Dyck path is an outline exactly when

  (c-1)  every east step of height 0 is red, and
  (c-2)  the first east step of each positive height is black.

A *line* is a maximal closed segment parallel to the diagonal, with lattice
endpoints, inside the closed region between the path and the diagonal.  A
line on y = x - c touches east step i when it passes through the step's
initial point (i-1, h_i), i.e. when (i-1) - h_i = c.  Two segments on the
same offset separated by a plateau rising above the line are distinct lines.
Every step is touched by exactly one line, and every line begins (is
leftmost) at a touched step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    InversionSequence,
    PositionSet,
    ValidationError,
)

__all__ = [
    "TwoColoredDyckPath",
    "DiagonalLine",
    "outline_of",
    "invert_outline",
    "c_set",
    "expo_set",
    "lines_of",
    "turn",
    "segment",
    "red",
    "return_",
    "is_in_class",
    "first_return_decompose",
    "recompose",
    "enumerate_paths",
    "avoids_021",
]


def avoids_021(e: InversionSequence) -> bool:
    """021-avoidance via the structural criterion.

    A sequence avoids 021 exactly when its positive entries are weakly
    increasing (the zero prefix supplies the '0' of any occurrence).
    """
    mx = 0
    for v in e.entries:
        if v != 0:
            if v < mx:
                return False
            mx = v
    return True


@dataclass(frozen=True)
class TwoColoredDyckPath:
    """Height word plus a red/black color per east step.

    ``heights[i]`` is the height of east step i+1; ``reds[i]`` is True when
    that step is red.  Validation enforces the lattice-path facts: heights
    weakly increasing and 0 <= h_i <= i-1.
    """

    heights: tuple[int, ...]
    reds: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.heights) != len(self.reds):
            raise ValidationError("heights and colors must have equal length")
        prev = 0
        for i, h in enumerate(self.heights, 1):
            if not 0 <= h <= i - 1:
                raise ValidationError(f"height {h} at step {i} outside [0, {i - 1}]")
            if h < prev:
                raise ValidationError(f"heights decrease at step {i}")
            prev = h

    def __len__(self) -> int:
        return len(self.heights)

    def height(self, i: int) -> int:
        """Height of the i-th east step (1-based)."""
        return self.heights[i - 1]

    def is_red(self, i: int) -> bool:
        return self.reds[i - 1]

    def encode(self) -> str:
        """Comma-separated heights, red steps suffixed 'r': "0r,1,1r"."""
        return ",".join(
            f"{h}r" if r else str(h) for h, r in zip(self.heights, self.reds)
        )

    @classmethod
    def decode(cls, text: str) -> "TwoColoredDyckPath":
        text = text.strip()
        if not text:
            return cls((), ())
        heights, reds = [], []
        for part in text.split(","):
            part = part.strip()
            is_red = part.endswith("r")
            if is_red:
                part = part[:-1]
            try:
                heights.append(int(part))
            except ValueError as exc:
                raise ValidationError(f"bad path step {part!r}") from exc
            reds.append(is_red)
        return cls(tuple(heights), tuple(reds))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"TwoColoredDyckPath({self.encode()!r})"


@dataclass(frozen=True)
class DiagonalLine:
    """A maximal segment on y = x - offset between the path and the diagonal.

    ``span`` is the closed x-interval [x_lo, x_hi] with integer endpoints;
    ``touched`` lists the 1-based steps whose initial point lies on the
    segment, in ascending order.  The line begins at ``touched[0]``.
    """

    offset: int
    span: tuple[int, int]
    touched: tuple[int, ...]

    @property
    def begin_step(self) -> int:
        return self.touched[0]


def outline_of(e: InversionSequence) -> TwoColoredDyckPath:
    """The outline of a 021-avoiding inversion sequence.

    Nonzero entries become black steps at their own height; zero entries
    become red steps at the running maximum.
    """
    if not avoids_021(e):
        raise ValidationError("sequence contains 021; outline undefined")
    heights, reds = [], []
    mx = 0
    for v in e.entries:
        if v != 0:
            mx = v
            heights.append(v)
            reds.append(False)
        else:
            heights.append(mx)
            reds.append(True)
    return TwoColoredDyckPath(tuple(heights), tuple(reds))


def invert_outline(path: TwoColoredDyckPath) -> InversionSequence:
    """The unique 021-avoiding sequence with the given outline.

    Requires conditions (c-1) and (c-2): red steps read back as zeros,
    black steps as their height.
    """
    if not is_in_class(path, "A"):
        raise ValidationError("path violates (c-1)/(c-2); not an outline")
    return InversionSequence(
        tuple(0 if r else h for h, r in zip(path.heights, path.reds))
    )


def c_set(e: InversionSequence) -> PositionSet:
    """Zero positions strictly between two equal positive entries."""
    if not avoids_021(e):
        raise ValidationError("sequence contains 021")
    w = e.entries
    n = len(w)
    members = []
    for i in range(1, n + 1):
        if w[i - 1] != 0:
            continue
        if any(
            w[a - 1] != 0 and w[a - 1] == w[b - 1]
            for a in range(1, i)
            for b in range(i + 1, n + 1)
        ):
            members.append(i)
    return PositionSet.from_iterable(n, members)


def expo_set(e: InversionSequence) -> PositionSet:
    """Exposed positions: i - h_i strictly minimal toward the right.

    Uses the numeric outline heights h; positions trapped between equal
    positive entries (the set returned by :func:`c_set`) are excluded.
    The last position always qualifies.
    """
    h = outline_of(e).heights
    n = len(h)
    trapped = c_set(e)
    members = []
    best = None  # strict minimum of j - h_j over suffix
    for i in range(n, 0, -1):
        value = i - h[i - 1]
        if (best is None or value < best) and i not in trapped:
            members.append(i)
        if best is None or value < best:
            best = value
    return PositionSet.from_iterable(n, members)


def lines_of(path: TwoColoredDyckPath) -> list[DiagonalLine]:
    """All maximal diagonal segments of a path, sorted by begin step.

    For offset c the unit interval above step i lies inside the region
    exactly when g_i := (i-1) - h_i >= c, so the maximal segments at offset
    c correspond to maximal runs of consecutive steps with g_i >= c; the
    run's touched steps are those with g_i = c, and the run always starts
    on one (g increases by at most 1 per step).
    """
    n = len(path)
    g = [(i + 1 - 1) - h for i, h in enumerate(path.heights)]  # g[i] for step i+1
    out: list[DiagonalLine] = []
    for c in range(0, (max(g) if g else -1) + 1):
        i = 0
        while i < n:
            if g[i] >= c:
                j = i
                while j + 1 < n and g[j + 1] >= c:
                    j += 1
                touched = tuple(t + 1 for t in range(i, j + 1) if g[t] == c)
                if touched:
                    out.append(DiagonalLine(c, (i, j + 1), touched))
                i = j + 1
            else:
                i += 1
    out.sort(key=lambda line: line.begin_step)
    return out


# ---------------------------------------------------------------------------
# path statistics

def turn(path: TwoColoredDyckPath) -> int:
    """Number of east steps immediately followed by a north step, minus 1.

    The final east step always counts: the path still has to climb to
    (n, n).  The empty path scores 0.
    """
    h = path.heights
    n = len(h)
    if n == 0:
        return 0
    turns = sum(1 for i in range(n - 1) if h[i + 1] > h[i]) + 1
    return turns - 1


def segment(path: TwoColoredDyckPath) -> int:
    """Number of maximal runs of consecutive black steps of equal height."""
    count = 0
    prev_black_height = None
    for h, r in zip(path.heights, path.reds):
        if r:
            prev_black_height = None
        else:
            if h != prev_black_height:
                count += 1
            prev_black_height = h
    return count


def red(path: TwoColoredDyckPath) -> int:
    """Number of red east steps."""
    return sum(path.reds)


def return_(path: TwoColoredDyckPath) -> int:
    """Number of lattice points (k, k), k >= 1, lying on the path.

    The path passes through (k, k) for k < n exactly when step k+1 sits at
    its maximal height k; the endpoint (n, n) always counts.  Each touch
    point counts once.
    """
    h = path.heights
    n = len(h)
    if n == 0:
        return 0
    return sum(1 for k in range(1, n) if h[k] == k) + 1


# ---------------------------------------------------------------------------
# path classes and the first-return decomposition

def is_in_class(path: TwoColoredDyckPath, cls: str) -> bool:
    """Membership in class A (outlines), B or R.

    A requires (c-1) and (c-2); B and R require (c-2) plus a black (resp.
    red) first step.  The empty path belongs to all three by convention.
    """
    if cls not in ("A", "B", "R"):
        raise ValidationError(f"unknown path class {cls!r}")
    n = len(path)
    if n == 0:
        return True
    first_of_height: dict[int, int] = {}
    for i in range(1, n + 1):
        h = path.height(i)
        first_of_height.setdefault(h, i)
        if h > 0 and first_of_height[h] == i and path.is_red(i):
            return False  # (c-2)
    if cls == "A":
        return all(not (h == 0 and not r) for h, r in zip(path.heights, path.reds))
    if cls == "B":
        return not path.is_red(1)
    return path.is_red(1)


def first_return_decompose(
    path: TwoColoredDyckPath,
) -> tuple[TwoColoredDyckPath, TwoColoredDyckPath, int]:
    """Split a class-B path at its first return to the diagonal.

    With k = min{i in [n] : h_{i+1} = i or i = n}, the first factor is
    steps 2..k unchanged and the second is steps k+1..n lowered by k.
    Returns (first, second, k); :func:`recompose` is the exact inverse.
    """
    if len(path) == 0 or not is_in_class(path, "B"):
        raise ValidationError("first-return decomposition needs a nonempty class-B path")
    h, r = path.heights, path.reds
    n = len(h)
    k = n
    for i in range(1, n):
        if h[i] == i:  # step i+1 at height i
            k = i
            break
    d1 = TwoColoredDyckPath(h[1:k], r[1:k])
    d2 = TwoColoredDyckPath(tuple(x - k for x in h[k:]), r[k:])
    return d1, d2, k


def recompose(
    d1: TwoColoredDyckPath, d2: TwoColoredDyckPath, k: int
) -> TwoColoredDyckPath:
    """Inverse of :func:`first_return_decompose`."""
    if len(d1) != k - 1:
        raise ValidationError("first factor length must be k - 1")
    heights = (0,) + d1.heights + tuple(x + k for x in d2.heights)
    reds = (False,) + d1.reds + d2.reds
    return TwoColoredDyckPath(heights, reds)


def enumerate_paths(n: int, cls: str) -> Iterator[TwoColoredDyckPath]:
    """All length-n two-colored Dyck paths in class A, B or R."""
    if cls not in ("A", "B", "R"):
        raise ValidationError(f"unknown path class {cls!r}")
    if n == 0:
        yield TwoColoredDyckPath((), ())
        return

    heights: list[int] = []
    reds: list[bool] = []

    def color_choices(i: int, h: int) -> Sequence[bool]:
        first_of_height = h not in heights[: i - 1]
        if h > 0 and first_of_height:
            return (False,)  # (c-2): must be black
        if cls == "A" and h == 0:
            return (True,)  # (c-1): must be red
        if i == 1:
            return (False,) if cls == "B" else (True,)
        return (False, True)

    def rec(i: int) -> Iterator[TwoColoredDyckPath]:
        if i > n:
            yield TwoColoredDyckPath(tuple(heights), tuple(reds))
            return
        lo = heights[-1] if heights else 0
        for h in range(lo, i):
            heights.append(h)
            for r in color_choices(i, h):
                reds.append(r)
                yield from rec(i + 1)
                reds.pop()
            heights.pop()

    yield from rec(1)
