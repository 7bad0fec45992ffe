"""
Bijections between 021-avoiding inversion sequences and (2413,4213)-avoiding
permutations.

``psi`` labels the east steps of the outline of a 021-avoiding sequence with
1..n, walking the diagonal lines of the outline in a specific order; reading
the labels left to right gives the image permutation.  The labeling obeys
two rules:

  (r-a)  a red step may be labeled only after every red step to its left;
  (r-b)  once a label lands left of an earlier-labeled step, everything
         left of that step is finished before anything to its right.

``psi_inverse`` reconstructs the outline from the permutation: step i is red
exactly at the left-to-right maxima, and the heights are recovered in
increasing label order by re-drawing the lines.  Because the path is only
partially known during reconstruction, a drawn line is modeled by its start
lattice point and reaches a point further northeast only while no already
determined step blocks the segment.

``phi`` is an unrelated recursive bijection in the opposite direction, built
from the end-insertion operator ``insert_tk`` and the available-value list
``ava``; it transports descent sets to ascent sets but differs from
``psi_inverse`` pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    InternalInvariantError,
    InversionSequence,
    Permutation,
    PositionSet,
    ValidationError,
    inverse,
)
from .outline import TwoColoredDyckPath, avoids_021, lines_of, outline_of
from .patterns import Pattern, avoids_all
from .statistics import lma_set, vid_set

__all__ = [
    "PSI_PATTERNS",
    "psi",
    "psi_inverse",
    "big_jumps",
    "insert_tk",
    "ava",
    "phi",
    "phi_inverse",
]

PSI_PATTERNS = (Pattern((2, 4, 1, 3)), Pattern((4, 2, 1, 3)))


@dataclass
class _LabelingState:
    """Mutable bookkeeping for one run of the labeling algorithm."""

    path: TwoColoredDyckPath
    lines: list
    labels: list  # 1-based; 0 = unlabeled
    drawn: list
    reds: list  # ascending red step indices
    red_ptr: int = 0  # reds[red_ptr] is the leftmost unlabeled red
    next_label: int = 1
    height: int = -1
    position: int = 0
    line_of_step: dict = field(default_factory=dict)


def psi(e: InversionSequence) -> Permutation:
    """Map a 021-avoiding inversion sequence to a (2413,4213)-avoider.

    Carries the sextuple of set statistics
    (DIST, ASC, ZERO, EMA, RMI, EXPO) of the input onto
    (VID, DES, LMA, LMI, RMA, RMI) of the output.
    """
    n = len(e)
    if n == 0:
        return Permutation(())
    if not avoids_021(e):
        raise ValidationError("input contains 021")
    path = outline_of(e)
    st = _LabelingState(
        path=path,
        lines=lines_of(path),
        labels=[0] * (n + 1),
        drawn=[],
        reds=[i for i in range(1, n + 1) if path.is_red(i)],
    )
    st.drawn = [False] * len(st.lines)
    for li, line in enumerate(st.lines):
        for t in line.touched:
            st.line_of_step[t] = li

    # start: draw the diagonal, label its highest touched step
    st.drawn[0] = True
    k = _assign(st, st.lines[0].touched[-1])
    state = 2 if path.is_red(k) else 3
    while st.next_label <= n:
        if state == 2:
            k = _draw_leftmost_eligible(st)
            state = 2 if path.is_red(k) else 3
        elif state == 3:
            state = 5 if _plateau_continues_right(st) else 4
        elif state == 4:
            k = _walk_southwest(st)
            state = 2 if path.is_red(k) else 3
        else:
            k = _draw_right_of_position(st)
            state = 3
    return Permutation(tuple(st.labels[1:]))


def _labelable_red(st: _LabelingState, i: int) -> bool:
    return st.red_ptr < len(st.reds) and st.reds[st.red_ptr] == i


def _eligible(st: _LabelingState, i: int) -> bool:
    if st.labels[i]:
        return False
    return (not st.path.is_red(i)) or _labelable_red(st, i)


def _assign(st: _LabelingState, k: int) -> int:
    if st.labels[k]:
        raise InternalInvariantError(f"step {k} labeled twice")
    if st.path.is_red(k) and not _labelable_red(st, k):
        raise InternalInvariantError(f"labeling red step {k} violates rule (r-a)")
    st.labels[k] = st.next_label
    st.next_label += 1
    st.height = st.path.height(k)
    st.position = k
    if st.path.is_red(k):
        st.red_ptr += 1
    return k


def _draw_leftmost_eligible(st: _LabelingState) -> int:
    """Procedure (2): leftmost new line touching an unlabeled black step or
    the currently labelable red step; label its highest touched step."""
    for li, line in enumerate(st.lines):
        if st.drawn[li]:
            continue
        if any(_eligible(st, t) for t in line.touched):
            st.drawn[li] = True
            return _assign(st, line.touched[-1])
    raise InternalInvariantError("no drawable line although labels remain")


def _plateau_continues_right(st: _LabelingState) -> bool:
    """Procedure (3) test: a black step of the current height further right."""
    p = st.path
    return any(
        p.height(j) == st.height and not p.is_red(j)
        for j in range(st.position + 1, len(p) + 1)
    )


def _walk_southwest(st: _LabelingState) -> int:
    """Procedure (4): walk left along the path, jumping southwest along
    already drawn lines, to the first unlabeled black or labelable red step."""
    cur = st.position
    while True:
        li = st.line_of_step[cur]
        southwest = [t for t in st.lines[li].touched if t < cur]
        if st.drawn[li] and southwest:
            cur = southwest[-1]
        else:
            cur -= 1
        if cur == 0:
            raise InternalInvariantError("southwest walk ran off the path")
        if _eligible(st, cur):
            return _assign(st, cur)


def _draw_right_of_position(st: _LabelingState) -> int:
    """Procedure (5): leftmost new line beginning right of the current
    position that touches an unlabeled black step; label its highest step."""
    for li, line in enumerate(st.lines):
        if st.drawn[li] or line.begin_step <= st.position:
            continue
        if any(
            not st.path.is_red(t) and not st.labels[t] for t in line.touched
        ):
            st.drawn[li] = True
            return _assign(st, line.touched[-1])
    raise InternalInvariantError("no line begins right of the current position")


# ---------------------------------------------------------------------------
# inverse labeling

def big_jumps(p: Permutation) -> PositionSet:
    """Left-to-right maximum positions whose value exceeds the previous
    left-to-right maximum by more than 1."""
    lma = lma_set(p).members()
    return PositionSet.from_iterable(
        len(p),
        (
            lma[j]
            for j in range(1, len(lma))
            if p.value_at(lma[j]) - p.value_at(lma[j - 1]) > 1
        ),
    )


def psi_inverse(p: Permutation) -> InversionSequence:
    """Inverse of :func:`psi` on (2413,4213)-avoiding permutations.

    Rebuilds the outline height by height in increasing value order.  Red
    steps sit exactly at the left-to-right maxima of the input; black
    heights are recovered by re-drawing lines from their start points.
    """
    n = len(p)
    if n == 0:
        return InversionSequence(())
    if not avoids_all(p, PSI_PATTERNS):
        raise ValidationError("input contains 2413 or 4213")

    pos = [0] * (n + 1)  # pos[v] = position of value v
    for i, v in enumerate(p.entries, 1):
        pos[v] = i
    lma = lma_set(p)
    vid = vid_set(p)
    bjp = big_jumps(p)
    word = p.entries

    d: list = [None] * (n + 1)  # 1-based heights, None = undetermined
    drawn: list[tuple[int, int]] = [(0, 0)]  # line start points; diagonal first

    def reaches(x0: int, y0: int, x: int) -> bool:
        """Does the line drawn from (x0, y0) reach abscissa x?

        True while x >= x0 and no already determined step between them dips
        below the line's offset.
        """
        c = x0 - y0
        if x < x0:
            return False
        for k in range(x0 + 1, x + 1):
            if d[k] is not None and (k - 1) - d[k] < c:
                return False
        return True

    def proc_two(j: int) -> None:
        # smallest possible height at step j touching a drawn line
        best = -1
        for x0, y0 in drawn:
            c = x0 - y0
            if c > best and reaches(x0, y0, j - 1):
                best = c
        if best < 0:
            raise InternalInvariantError(f"no drawn line touches step {j}")
        d[j] = (j - 1) - best

    def proc_four(label: int) -> None:
        i, j = pos[label - 1], pos[label]
        if i >= j:
            raise InternalInvariantError(
                f"previous value sits right of current at label {label}"
            )
        candidates = [
            d[k] for k in range(i, j) if word[k - 1] < label and d[k] is not None
        ]
        if not candidates:
            raise InternalInvariantError(f"no determined height in [{i}, {j})")
        dd = max(candidates)
        for m in range(i + 1, j + 1):
            if m in lma and m not in bjp:
                continue
            c = (m - 1) - dd
            if c < 0:
                continue
            if any(x0 - y0 == c and reaches(x0, y0, m - 1) for x0, y0 in drawn):
                continue  # the point already lies on a drawn line
            # (m-1, dd) must start a maximal segment: a determined height at
            # or right of step m-1 below dd would let it slide southwest
            if any(
                d[k] is not None and d[k] < dd for k in range(m - 1, n + 1)
            ):
                continue
            drawn.append((m - 1, dd))
            d[j] = dd + (j - m)
            return
        raise InternalInvariantError(f"no admissible line start for label {label}")

    # (I): the smallest value's step touches the diagonal
    j = pos[1]
    d[j] = j - 1
    label = 2
    state = 2 if j in vid else 3
    while label <= n:
        if state == 2:
            j = pos[label]
            proc_two(j)
            label += 1
            state = 2 if j in vid else 3
        elif state == 3:
            state = 5 if pos[label] in lma else 4
        elif state == 4:
            j = pos[label]
            proc_four(label)
            label += 1
            state = 2 if j in vid else 3
        else:  # (V): red step at the running maximum
            j = pos[label]
            d[j] = max((d[k] for k in range(1, j) if d[k] is not None), default=0)
            label += 1
            state = 3

    heights = tuple(d[1:])
    reds = tuple(i in lma for i in range(1, n + 1))
    TwoColoredDyckPath(heights, reds)  # validates the reconstruction
    e = InversionSequence(tuple(0 if r else h for h, r in zip(heights, reds)))
    if not avoids_021(e):
        raise InternalInvariantError("reconstructed sequence contains 021")
    return e


# ---------------------------------------------------------------------------
# the recursive insertion bijection

def insert_tk(p: Permutation, k: int) -> Permutation:
    """Append value k, first bumping every entry >= k up by one."""
    n = len(p) + 1
    if not 1 <= k <= n:
        raise ValidationError(f"inserting value {k} outside [1, {n}]")
    return Permutation(
        tuple(v + 1 if v >= k else v for v in p.entries) + (k,)
    )


def ava(p: Permutation) -> list[int]:
    """Available inserting values, descending: k with insert_tk(p, k) still
    avoiding 2413 and 4213.  Always starts with n and ends with 1."""
    if not avoids_all(p, PSI_PATTERNS):
        raise ValidationError("input contains 2413 or 4213")
    n = len(p) + 1
    return [k for k in range(n, 0, -1) if avoids_all(insert_tk(p, k), PSI_PATTERNS)]


def _peel(p: Permutation) -> tuple[Permutation, int]:
    """Undo insert_tk: drop the last entry and close the value gap."""
    k = p.entries[-1]
    return (
        Permutation(tuple(v - 1 if v > k else v for v in p.entries[:-1])),
        k,
    )


def _insertion_chain(p: Permutation) -> list[int]:
    """Last-inserted values of p, its parent, grandparent, .. (length n)."""
    chain = []
    while len(p):
        p, k = _peel(p)
        chain.append(k)
    chain.reverse()
    return chain


def _ava_after_insert(old_ava: list[int], j: int, n: int) -> list[int]:
    """Available values after inserting the j-th available value (1-based).

    With old values k_1 > k_2 > .., the new list is
    n+1 >= k_j + 1 > k_j > k_{j+1} > .. > 1, deduplicated at the top.
    """
    kj = old_ava[j - 1]
    out = [n + 1]
    if kj + 1 < n + 1:
        out.append(kj + 1)
    out.extend(old_ava[j - 1 :])
    return out


def phi(p: Permutation) -> InversionSequence:
    """Recursive bijection onto 021-avoiding inversion sequences.

    Strips end-insertions down to the empty permutation, then replays them:
    if the inserted value is the j-th available one and m is the running
    maximum of the sequence built so far, the new entry is the j-th
    smallest element of {0} u {m, m+1, .., n-1}.

    Transports (DES, LMA, LMI, RMA) to (ASC, ZERO, EMA, RMI); differs from
    :func:`psi_inverse` pointwise.
    """
    chain = _insertion_chain(p)
    entries: list[int] = []
    available = [1]  # ava of the empty permutation
    mx = 0
    for size, k in enumerate(chain, 1):
        if k not in available:
            raise ValidationError("input contains 2413 or 4213")
        j = available.index(k) + 1  # available is descending
        choices = _entry_choices(mx, size)
        entry = choices[j - 1]
        entries.append(entry)
        mx = max(mx, entry)
        available = _ava_after_insert(available, available.index(k) + 1, size)
    return InversionSequence(tuple(entries))


def _entry_choices(mx: int, size: int) -> list[int]:
    """Ascending {0} u {mx, mx+1, .., size-1}; just 0..size-1 when mx = 0."""
    if mx == 0:
        return list(range(size))
    return [0] + list(range(mx, size))


def phi_inverse(e: InversionSequence) -> Permutation:
    """Inverse of :func:`phi`."""
    if not avoids_021(e):
        raise ValidationError("input contains 021")
    available = [1]
    mx = 0
    chain: list[int] = []
    for size, entry in enumerate(e.entries, 1):
        choices = _entry_choices(mx, size)
        if entry not in choices:
            raise InternalInvariantError(
                f"entry {entry} at position {size} not reachable"
            )
        j = choices.index(entry) + 1
        if j > len(available):
            raise InternalInvariantError(
                f"rank {j} exceeds the {len(available)} available values"
            )
        k = available[j - 1]
        chain.append(k)
        mx = max(mx, entry)
        available = _ava_after_insert(available, j, size)
    p = Permutation(())
    for k in chain:
        p = insert_tk(p, k)
    return p
