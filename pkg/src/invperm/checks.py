"""
Named verification checks: each one certifies a statement exhaustively at a
given size and reports PASS or a machine-readable counterexample.

Every check returns a :class:`CheckResult`; ``detail`` carries enough to
reproduce a failure (the offending objects and the statistic values on both
sides).  Checks accept a ``jobs`` hint and partition their sweeps by
canonical prefix when it exceeds one, merging partial results in prefix
order so the outcome is identical for every worker count.
"""

from __future__ import annotations

import concurrent.futures
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import bijections, mfs, outline, series, statistics
from .bijections import PSI_PATTERNS, ava, insert_tk, phi, phi_inverse, psi, psi_inverse
from .core import InversionSequence, Permutation
from .patterns import (
    Pattern,
    enumerate_all_inversion_sequences,
    enumerate_avoiding_inversion_sequences,
    enumerate_avoiding_permutations,
    parse_patterns,
)
from .statistics import (
    asc_set,
    des_set,
    dist_set,
    ema_set,
    equidistributed,
    gamma_decompose,
    gamma_expand,
    lma_set,
    lmi_set,
    rma_set,
    rmi_seq_set,
    rmi_set,
    vid_set,
    zero_set,
)

__all__ = ["CheckResult", "CHECKS", "run_check", "DEFAULT_SIZES"]

P021 = (Pattern((0, 2, 1)),)
WILF_CLASSES = {
    "2413,4213": parse_patterns("2413,4213"),
    "2314,3214": parse_patterns("2314,3214"),
    "3412,4312": parse_patterns("3412,4312"),
}
DES_WILF_CLASS = parse_patterns("2413,3142")


@dataclass
class CheckResult:
    check: str
    n: int
    ok: bool
    detail: dict = field(default_factory=dict)


def _invseqs(n: int) -> Iterable[InversionSequence]:
    return enumerate_avoiding_inversion_sequences(n, P021)


def _perms(n: int, pats=PSI_PATTERNS) -> Iterable[Permutation]:
    return enumerate_avoiding_permutations(n, pats)


# ---------------------------------------------------------------------------
# parallel sweep helper

def _partition_prefixes(kind: str, n: int) -> list[tuple[int, ...]]:
    if kind == "perm":
        return [(v,) for v in range(1, n + 1)]
    # inversion sequences: e_1 = 0 always; split on (e_2, e_3)
    if n < 3:
        return [()]
    return [(0, a, b) for a in range(2) for b in range(3)]


def _sweep(
    kind: str,
    n: int,
    pats: Sequence[Pattern],
    worker: Callable,
    jobs: int = 1,
) -> list:
    """Run ``worker(kind, n, pats, prefix)`` over canonical-prefix partitions
    and concatenate the results in prefix order."""
    prefixes = _partition_prefixes(kind, n)
    if jobs <= 1 or len(prefixes) <= 1:
        return [worker((kind, n, tuple(p.word for p in pats), pfx)) for pfx in prefixes]
    args = [(kind, n, tuple(p.word for p in pats), pfx) for pfx in prefixes]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, args))


def _enumerate_part(kind: str, n: int, pat_words, prefix):
    pats = tuple(Pattern(w) for w in pat_words)
    if kind == "perm":
        return enumerate_avoiding_permutations(n, pats, prefix=prefix)
    return enumerate_avoiding_inversion_sequences(n, pats, prefix=prefix)


def _count_worker(args) -> int:
    kind, n, pat_words, prefix = args
    return sum(1 for _ in _enumerate_part(kind, n, pat_words, prefix))


def _sextuple_worker(args):
    kind, n, pat_words, prefix = args
    for e in _enumerate_part(kind, n, pat_words, prefix):
        p = psi(e)
        lhs = (dist_set(e), asc_set(e), zero_set(e), ema_set(e), rmi_seq_set(e),
               outline.expo_set(e))
        rhs = (vid_set(p), des_set(p), lma_set(p), lmi_set(p), rma_set(p), rmi_set(p))
        if lhs != rhs:
            return {
                "sequence": e.encode(),
                "image": p.encode(),
                "lhs": [s.encode() for s in lhs],
                "rhs": [s.encode() for s in rhs],
            }
    return None


def _roundtrip_worker(args):
    kind, n, pat_words, prefix = args
    for e in _enumerate_part(kind, n, pat_words, prefix):
        p = psi(e)
        back = psi_inverse(p)
        if back != e:
            return {"sequence": e.encode(), "image": p.encode(), "back": back.encode()}
    return None


# ---------------------------------------------------------------------------
# the checks

def check_schroder_counts(n: int, jobs: int = 1) -> CheckResult:
    """All five avoidance classes have the large Schroder cardinality."""
    expected = series.schroder_numbers(n)[n - 1] if n >= 1 else 1
    counts = {}
    families = dict(WILF_CLASSES)
    families["2413,3142"] = DES_WILF_CLASS
    for name, pats in families.items():
        counts[name] = sum(_sweep("perm", n, pats, _count_worker, jobs))
    counts["invseq:021"] = sum(_sweep("invseq", n, P021, _count_worker, jobs))
    ok = all(c == expected for c in counts.values())
    return CheckResult("schroder-counts", n, ok, {"expected": expected, "counts": counts})


def check_sextuple(n: int, jobs: int = 1) -> CheckResult:
    """The six set statistics transport through psi, for every size <= n."""
    for m in range(0, n + 1):
        for witness in _sweep("invseq", m, P021, _sextuple_worker, jobs):
            if witness is not None:
                return CheckResult("sextuple", m, False, witness)
    return CheckResult("sextuple", n, True)


def check_roundtrip(n: int, jobs: int = 1) -> CheckResult:
    """psi_inverse o psi = id and psi o psi_inverse = id, sizes <= n."""
    for m in range(0, n + 1):
        for witness in _sweep("invseq", m, P021, _roundtrip_worker, jobs):
            if witness is not None:
                return CheckResult("roundtrip", m, False, witness)
        for p in _perms(m):
            e = psi_inverse(p)
            if psi(e) != p:
                return CheckResult(
                    "roundtrip", m, False,
                    {"permutation": p.encode(), "preimage": e.encode()},
                )
    return CheckResult("roundtrip", n, True)


def check_phi(n: int, jobs: int = 1) -> CheckResult:
    """phi round-trips and transports the quadruple of set statistics."""
    for m in range(0, n + 1):
        for p in _perms(m):
            e = phi(p)
            if phi_inverse(e) != p:
                return CheckResult(
                    "phi", m, False, {"permutation": p.encode(), "image": e.encode()}
                )
            lhs = (des_set(p), lma_set(p), lmi_set(p), rma_set(p))
            rhs = (asc_set(e), zero_set(e), ema_set(e), rmi_seq_set(e))
            if lhs != rhs:
                return CheckResult(
                    "phi", m, False,
                    {
                        "permutation": p.encode(),
                        "image": e.encode(),
                        "lhs": [s.encode() for s in lhs],
                        "rhs": [s.encode() for s in rhs],
                    },
                )
    return CheckResult("phi", n, True)


_LRM_ITEMS = {
    1: (asc_set, des_set),
    2: (dist_set, vid_set),
    3: (zero_set, lma_set),
    4: (ema_set, lmi_set),
    5: (rmi_seq_set, rma_set),
    6: (outline.expo_set, rmi_set),
}


def check_lrm(n: int, jobs: int = 1) -> CheckResult:
    """The six statistic correspondences of psi, item by item."""
    for m in range(0, n + 1):
        for e in _invseqs(m):
            p = psi(e)
            for item, (f_seq, f_perm) in _LRM_ITEMS.items():
                if f_seq(e) != f_perm(p):
                    return CheckResult(
                        "lrm", m, False,
                        {
                            "item": item,
                            "sequence": e.encode(),
                            "image": p.encode(),
                            "lhs": f_seq(e).encode(),
                            "rhs": f_perm(p).encode(),
                        },
                    )
    return CheckResult("lrm", n, True)


def check_outline_stats(n: int, jobs: int = 1) -> CheckResult:
    """(dist, asc, zero, ema) of e equals (turn, segment, red, return) of
    its outline, sizes <= n."""
    for m in range(0, n + 1):
        for e in _invseqs(m):
            d = outline.outline_of(e)
            lhs = (
                statistics.dist(e),
                statistics.asc(e),
                statistics.zero(e),
                statistics.ema(e),
            )
            rhs = (outline.turn(d), outline.segment(d), outline.red(d), outline.return_(d))
            if lhs != rhs:
                return CheckResult(
                    "outline-stats", m, False,
                    {"sequence": e.encode(), "lhs": list(lhs), "rhs": list(rhs)},
                )
    return CheckResult("outline-stats", n, True)


def check_foata(n: int, jobs: int = 1) -> CheckResult:
    """(dist, ASC) over all inversion sequences matches (ides, DES) over all
    permutations, sizes <= n."""
    for m in range(0, n + 1):
        lhs = [
            (statistics.dist(e), asc_set(e)) for e in enumerate_all_inversion_sequences(m)
        ]
        rhs = [
            (statistics.ides(p), des_set(p))
            for p in map(Permutation, itertools.permutations(range(1, m + 1)))
        ]
        ok, witness = equidistributed(lhs, rhs)
        if not ok:
            return CheckResult(
                "foata", m, False,
                {"witness": [witness[0], witness[1].encode()]},
            )
    return CheckResult("foata", n, True)


def check_general_quadruple(n: int, jobs: int = 1) -> CheckResult:
    """(DIST, ASC, ZERO, EMA) over all of I_n matches (VID, DES, LMA, LMI)
    over all of S_n, sizes <= n."""
    for m in range(0, n + 1):
        lhs = [
            (dist_set(e), asc_set(e), zero_set(e), ema_set(e))
            for e in enumerate_all_inversion_sequences(m)
        ]
        rhs = [
            (vid_set(p), des_set(p), lma_set(p), lmi_set(p))
            for p in map(Permutation, itertools.permutations(range(1, m + 1)))
        ]
        ok, witness = equidistributed(lhs, rhs)
        if not ok:
            return CheckResult(
                "general-quadruple", m, False,
                {"witness": [s.encode() for s in witness]},
            )
    return CheckResult("general-quadruple", n, True)


def check_wilf(n: int, jobs: int = 1) -> CheckResult:
    """Descent-set distributions of the three DES-Wilf classes coincide and
    the separable class matches in the descent number, sizes <= n."""
    for m in range(0, n + 1):
        dists = {
            name: sorted(des_set(p).encode() for p in _perms(m, pats))
            for name, pats in WILF_CLASSES.items()
        }
        base = dists["2413,4213"]
        for name, d in dists.items():
            if d != base:
                return CheckResult(
                    "wilf", m, False, {"class": name, "kind": "DES-set mismatch"}
                )
        des_base = sorted(len(des_set(p)) for p in _perms(m))
        des_sep = sorted(len(des_set(p)) for p in _perms(m, DES_WILF_CLASS))
        if des_base != des_sep:
            return CheckResult(
                "wilf", m, False, {"class": "2413,3142", "kind": "des mismatch"}
            )
    return CheckResult("wilf", n, True)


def check_gamma_invseq(n: int, jobs: int = 1) -> CheckResult:
    """The ascent polynomial of the 021-avoiders expands over the gamma
    basis with the restricted-sequence counts as coefficients, sizes <= n."""
    for m in range(1, n + 1):
        poly = statistics.distribution(_invseqs(m), [("t", statistics.asc)])
        gamma = mfs.gamma_from_tilde(m)
        expanded = gamma_expand(gamma, m)
        actual = poly.univariate_coefficients()
        if tuple(expanded) != tuple(actual):
            return CheckResult(
                "gamma-invseq", m, False,
                {"gamma": list(gamma), "expanded": list(expanded), "actual": list(actual)},
            )
        peeled = gamma_decompose(poly, m)
        if peeled != gamma:
            return CheckResult(
                "gamma-invseq", m, False,
                {"gamma": list(gamma), "peeled": list(peeled)},
            )
    return CheckResult("gamma-invseq", n, True)


def check_cubic(order: int, jobs: int = 1) -> CheckResult:
    """The solved series satisfies the cubic identity and both
    specializations; coefficients match brute-force enumeration."""
    sol = series.solve_gs_system(order)
    report = series.verify_cubic(sol.s)
    if not report.ok:
        return CheckResult(
            "cubic", order, False,
            {
                "main_first_fail": report.main_first_fail,
                "sepe_first_fail": report.sepe_first_fail,
                "dist_first_fail": report.dist_first_fail,
            },
        )
    brute_order = min(order, 8)
    brute = series.series_from_enumeration(brute_order)
    for k in range(1, brute_order + 1):
        if sol.s.coefficient(k).terms != brute.coefficient(k).terms:
            return CheckResult("cubic", order, False, {"coefficient_mismatch_at": k})
    return CheckResult("cubic", order, True)


def check_mfs_invariance(n: int, jobs: int = 1) -> CheckResult:
    """The avoidance class is action-invariant and every orbit's descent
    polynomial is t^des (1+t)^(n-1-2 des) of its representative, sizes <= n."""
    for m in range(1, n + 1):
        members = list(_perms(m))
        ok, witness = mfs.check_invariance(members)
        if not ok:
            p, x, q = witness
            return CheckResult(
                "mfs-invariance", m, False,
                {"element": p.encode(), "value": x, "image": q.encode()},
            )
        seen: set = set()
        for p in members:
            if p in seen:
                continue
            orbit = mfs.mfs_orbit(p)
            seen.update(orbit)
            rep = mfs.canonical_rep(p)
            poly = [0] * m
            for q in orbit:
                poly[statistics.des(q)] += 1
            while poly and poly[-1] == 0:
                poly.pop()
            expected = gamma_expand(
                tuple(0 if k != statistics.des(rep) else 1 for k in range(statistics.des(rep) + 1)),
                m,
            )
            if tuple(poly) != tuple(expected):
                return CheckResult(
                    "mfs-invariance", m, False,
                    {
                        "orbit_of": p.encode(),
                        "representative": rep.encode(),
                        "orbit_poly": poly,
                        "expected": list(expected),
                    },
                )
    return CheckResult("mfs-invariance", n, True)


def check_insert(n: int, jobs: int = 1) -> CheckResult:
    """Available-value lists after an end-insertion match the predicted
    ones (for hosts of every size < n)."""
    for m in range(0, n):
        for p in _perms(m):
            values = ava(p)
            for j, k in enumerate(values, 1):
                child = insert_tk(p, k)
                predicted = bijections._ava_after_insert(values, j, m + 1)
                actual = ava(child)
                if predicted != actual:
                    return CheckResult(
                        "insert", m + 1, False,
                        {
                            "host": p.encode(),
                            "inserted": k,
                            "predicted": predicted,
                            "actual": actual,
                        },
                    )
    return CheckResult("insert", n, True)


def check_schroder_dist(n: int, jobs: int = 1) -> CheckResult:
    """The distinct-positive-entry statistic over 021-avoiders matches
    ascents over Schroder paths one size down, sizes <= n."""
    for m in range(1, n + 1):
        lhs = statistics.distribution(_invseqs(m), [("s", statistics.dist)])
        rhs = series.schroder_asc_polynomial(m)
        if lhs.terms != rhs.terms:
            return CheckResult(
                "schroder-dist", m, False,
                {"invseq": lhs.terms, "paths": rhs.terms},
            )
    return CheckResult("schroder-dist", n, True)


def check_decompose(n: int, jobs: int = 1) -> CheckResult:
    """First-return decomposition: exact recomposition plus the four
    statistic bookkeeping identities, on every class-B path of size <= n."""
    for m in range(1, n + 1):
        for d in outline.enumerate_paths(m, "B"):
            d1, d2, k = outline.first_return_decompose(d)
            if outline.recompose(d1, d2, k) != d:
                return CheckResult(
                    "decompose", m, False, {"path": d.encode(), "k": k}
                )
            d1_red_like = len(d1) == 0 or d1.is_red(1)
            checks = {
                "turn": outline.turn(d)
                == outline.turn(d1) + outline.turn(d2) + (1 if k != m else 0),
                "segment": outline.segment(d)
                == outline.segment(d1) + outline.segment(d2) + (1 if d1_red_like else 0),
                "red": outline.red(d) == outline.red(d1) + outline.red(d2),
                "return": outline.return_(d) == 1 + outline.return_(d2),
            }
            if not all(checks.values()):
                return CheckResult(
                    "decompose", m, False,
                    {"path": d.encode(), "failed": [c for c, v in checks.items() if not v]},
                )
    return CheckResult("decompose", n, True)


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "schroder-counts": check_schroder_counts,
    "sextuple": check_sextuple,
    "roundtrip": check_roundtrip,
    "phi": check_phi,
    "lrm": check_lrm,
    "outline-stats": check_outline_stats,
    "foata": check_foata,
    "general-quadruple": check_general_quadruple,
    "wilf": check_wilf,
    "gamma-invseq": check_gamma_invseq,
    "cubic": check_cubic,
    "mfs-invariance": check_mfs_invariance,
    "insert": check_insert,
    "schroder-dist": check_schroder_dist,
    "decompose": check_decompose,
}

# sizes used when the command line does not pass --n
DEFAULT_SIZES: dict[str, int] = {
    "schroder-counts": 7,
    "sextuple": 8,
    "roundtrip": 8,
    "phi": 8,
    "lrm": 8,
    "outline-stats": 8,
    "foata": 7,
    "general-quadruple": 7,
    "wilf": 7,
    "gamma-invseq": 8,
    "cubic": 10,
    "mfs-invariance": 7,
    "insert": 7,
    "schroder-dist": 8,
    "decompose": 6,
}


def run_check(name: str, n: int | None = None, jobs: int = 1) -> CheckResult:
    if name not in CHECKS:
        raise KeyError(name)
    if n is None:
        n = DEFAULT_SIZES[name]
    return CHECKS[name](n, jobs=jobs)
