"""
The modified Foata-Strehl group action on permutations and the gamma-vector
machinery built on it.

The action is indexed by values x in [n].  Writing pi = w1 w2 x w3 w4 with
w2 (resp. w3) the maximal contiguous block of letters greater than x
immediately left (resp. right) of x, the basic move swaps w2 and w3.  With
the boundary convention pi_0 = pi_{n+1} = -infinity, every value is exactly
one of double ascent, double descent, peak or valley; the modified move
applies the swap on double ascents and double descents and fixes peaks and
valleys.  All moves are commuting involutions, so Z_2^n acts; each orbit
contains a unique permutation without double descents, and the orbit's
descent polynomial is t^des (1+t)^(n-1-2 des) of that representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Permutation, ValidationError
from .patterns import enumerate_avoiding_inversion_sequences, Pattern
from .statistics import asc_set, des

__all__ = [
    "XFactorization",
    "x_factorize",
    "fs_act",
    "mfs_act",
    "classify_value",
    "mfs_orbit",
    "canonical_rep",
    "check_invariance",
    "gamma_via_orbits",
    "tilde_invseq",
    "tilde_invseq_members",
    "gamma_from_tilde",
]

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class XFactorization:
    """The split w1 w2 x w3 w4 around value x."""

    w1: tuple[int, ...]
    w2: tuple[int, ...]
    x: int
    w3: tuple[int, ...]
    w4: tuple[int, ...]

    def join(self) -> tuple[int, ...]:
        return self.w1 + self.w2 + (self.x,) + self.w3 + self.w4


def x_factorize(p: Permutation, x: int) -> XFactorization:
    """Factor p as w1 w2 x w3 w4 with w2, w3 the maximal adjacent blocks of
    letters exceeding x."""
    w = p.entries
    n = len(w)
    if not 1 <= x <= n:
        raise ValidationError(f"value {x} outside [{n}]")
    i = w.index(x)
    a = i
    while a > 0 and w[a - 1] > x:
        a -= 1
    b = i + 1
    while b < n and w[b] > x:
        b += 1
    return XFactorization(w[:a], w[a:i], x, w[i + 1 : b], w[b:])


def fs_act(p: Permutation, x: int) -> Permutation:
    """Swap the two blocks flanking x: w1 w2 x w3 w4 -> w1 w3 x w2 w4."""
    f = x_factorize(p, x)
    return Permutation(f.w1 + f.w3 + (f.x,) + f.w2 + f.w4)


def classify_value(p: Permutation, x: int) -> str:
    """'double_ascent', 'double_descent', 'peak' or 'valley' for value x,
    with -infinity padding at both ends."""
    w = p.entries
    n = len(w)
    if not 1 <= x <= n:
        raise ValidationError(f"value {x} outside [{n}]")
    i = w.index(x)
    left = w[i - 1] if i > 0 else _NEG_INF
    right = w[i + 1] if i + 1 < n else _NEG_INF
    if left < x < right:
        return "double_ascent"
    if left > x > right:
        return "double_descent"
    if left < x > right:
        return "peak"
    return "valley"


def mfs_act(p: Permutation, x: int) -> Permutation:
    """The modified move: swap on double ascents/descents, fix peaks/valleys."""
    kind = classify_value(p, x)
    if kind in ("double_ascent", "double_descent"):
        return fs_act(p, x)
    return p


def mfs_orbit(p: Permutation) -> frozenset[Permutation]:
    """Closure of {p} under every value move; always a power of 2 in size."""
    n = len(p)
    seen = {p}
    frontier = [p]
    while frontier:
        q = frontier.pop()
        for x in range(1, n + 1):
            r = mfs_act(q, x)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return frozenset(seen)


def canonical_rep(p: Permutation) -> Permutation:
    """The unique orbit element without double descents.

    Applies the move at double-descent values until none remain; each
    application turns its value into a double ascent, so the loop is a
    fixpoint iteration rather than a full orbit expansion.
    """
    n = len(p)
    while True:
        dd = [
            x for x in range(1, n + 1) if classify_value(p, x) == "double_descent"
        ]
        if not dd:
            return p
        p = fs_act(p, dd[0])


def check_invariance(
    perms: Iterable[Permutation],
) -> tuple[bool, tuple[Permutation, int, Permutation] | None]:
    """Is the set closed under every move?  On failure returns a witness
    (element, value, image outside the set)."""
    members = set(perms)
    n = len(next(iter(members))) if members else 0
    for p in sorted(members, key=lambda q: q.entries):
        for x in range(1, n + 1):
            q = mfs_act(p, x)
            if q not in members:
                return False, (p, x, q)
    return True, None


def gamma_via_orbits(perms: Iterable[Permutation]) -> tuple[int, ...]:
    """Gamma vector of the descent polynomial of an action-invariant class.

    gamma_k counts class members with k descents and no double descents;
    refuses classes that are not closed under the action.
    """
    members = list(perms)
    ok, witness = check_invariance(members)
    if not ok:
        raise ValidationError(f"class not action-invariant: witness {witness}")
    if not members:
        return ()
    n = len(members[0])
    top = (n - 1) // 2 if n else 0
    gamma = [0] * (top + 1)
    for p in members:
        if any(
            classify_value(p, x) == "double_descent" for x in range(1, n + 1)
        ):
            continue
        gamma[des(p)] += 1
    return tuple(gamma)


# ---------------------------------------------------------------------------
# gamma counts straight from inversion sequences

_021 = (Pattern((0, 2, 1)),)


def _tilde_members(n: int):
    """021-avoiders with no double ascents and a weak final descent.

    A double ascent is i in [n-2] with both i and i+1 ascents; the final
    condition is e_{n-1} >= e_n, vacuous for n = 1.
    """
    for e in enumerate_avoiding_inversion_sequences(n, _021):
        ascents = asc_set(e)
        if any(i in ascents and (i + 1) in ascents for i in range(1, n - 1)):
            continue
        if n >= 2 and e.entries[n - 2] < e.entries[n - 1]:
            continue
        yield e


def tilde_invseq(n: int, k: int) -> int:
    """Number of 021-avoiders with asc = k, no double ascents, weak final
    descent; these are the gamma coefficients of the ascent polynomial."""
    return sum(1 for e in _tilde_members(n) if len(asc_set(e)) == k)


def tilde_invseq_members(n: int, k: int) -> list:
    return [e for e in _tilde_members(n) if len(asc_set(e)) == k]


def gamma_from_tilde(n: int) -> tuple[int, ...]:
    """The whole gamma vector (k = 0 .. floor((n-1)/2)) in one sweep."""
    if n == 0:
        return ()
    gamma = [0] * ((n - 1) // 2 + 1)
    for e in _tilde_members(n):
        gamma[len(asc_set(e))] += 1
    return tuple(gamma)
