"""
Truncated formal power series over exact integer polynomials in (s,t,u,v),
the fixed-point solution of the three-equation system satisfied by the path
generating functions, the cubic identity checks, and Schroder paths.

The classes of two-colored Dyck paths tracked here are

  A: outlines (red at height 0, black first of each positive height),
  B: condition (c-2) with a black first step,
  R: condition (c-2) with a red first step,

each weighted s^turn t^segment u^red v^return, with ordinary generating
functions S, B, R in z.  The first-return decomposition of class B yields

  S = u v z (1 + S|v=1) (1 + s B)
  B =   v z (t + t R|v=1 + B|v=1) (1 + s B)
  R = u v z (1 + R|v=1 + B|v=1) (1 + s B)

Every right side carries a factor z, so iterating from the zero series is a
contraction: coefficients up to z^k are exact after k rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import ValidationError
from .outline import enumerate_paths, red, return_, segment, turn
from .patterns import Pattern, enumerate_avoiding_inversion_sequences
from .statistics import DistributionPolynomial, asc, dist, ema, zero

__all__ = [
    "VARIABLES",
    "TruncatedSeries",
    "GsSolution",
    "solve_gs_system",
    "CubicReport",
    "verify_cubic",
    "series_from_enumeration",
    "path_statistics_polynomial",
    "SchroderPath",
    "enumerate_schroder_paths",
    "schroder_ascents",
    "schroder_asc_polynomial",
    "schroder_numbers",
]

VARIABLES = ("s", "t", "u", "v")

_ZERO = DistributionPolynomial.zero_poly(VARIABLES)
_ONE = DistributionPolynomial.constant(VARIABLES, 1)
_S = DistributionPolynomial.variable(VARIABLES, "s")
_T = DistributionPolynomial.variable(VARIABLES, "t")
_U = DistributionPolynomial.variable(VARIABLES, "u")
_V = DistributionPolynomial.variable(VARIABLES, "v")


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in z truncated at order N, coefficients in Z[s,t,u,v].

    ``coeffs[k]`` is the coefficient of z^k, k = 0..N.  All arithmetic is
    exact and truncates consistently at the common order.
    """

    order: int
    coeffs: tuple[DistributionPolynomial, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.order + 1:
            raise ValidationError("coefficient count must be order + 1")

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order, tuple([_ZERO] * (order + 1)))

    @classmethod
    def constant(cls, order: int, poly: DistributionPolynomial) -> "TruncatedSeries":
        return cls(order, (poly,) + tuple([_ZERO] * order))

    def coefficient(self, k: int) -> DistributionPolynomial:
        return self.coeffs[k]

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValidationError(
                f"truncation order mismatch: {self.order} != {other.order}"
            )

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.order,
            tuple(a.add(b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def sub(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.order,
            tuple(a.sub(b) for a, b in zip(self.coeffs, other.coeffs)),
        )

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = [_ZERO] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order - i + 1):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j].add(a.mul(b))
        return TruncatedSeries(self.order, tuple(out))

    def scale(self, poly: DistributionPolynomial) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(c.mul(poly) for c in self.coeffs))

    def shift_z(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by z^k."""
        out = tuple([_ZERO] * k) + self.coeffs[: self.order + 1 - k]
        return TruncatedSeries(self.order, out)

    def substitute_one(self, variable: str) -> "TruncatedSeries":
        return TruncatedSeries(
            self.order, tuple(c.substitute_one(variable) for c in self.coeffs)
        )

    def substitute_v1(self) -> "TruncatedSeries":
        """Set v := 1 (the specialization used inside the system)."""
        return self.substitute_one("v")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def first_nonzero_order(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None


@dataclass(frozen=True)
class GsSolution:
    s: TruncatedSeries
    b: TruncatedSeries
    r: TruncatedSeries


def solve_gs_system(order: int) -> GsSolution:
    """Unique solution of the system by fixed-point iteration from zero.

    ``order`` rounds suffice: the z factor on every right side stabilizes
    the coefficient of z^k after k rounds.
    """
    if order < 1:
        raise ValidationError("order must be >= 1")
    s = b = r = TruncatedSeries.zero(order)
    one = TruncatedSeries.constant(order, _ONE)
    uv = _U.mul(_V)
    for _ in range(order):
        one_sb = one.add(b.scale(_S))
        s_new = one.add(s.substitute_one("v")).mul(one_sb).scale(uv).shift_z()
        b_inner = (
            TruncatedSeries.constant(order, _T)
            .add(r.substitute_one("v").scale(_T))
            .add(b.substitute_one("v"))
        )
        b_new = b_inner.mul(one_sb).scale(_V).shift_z()
        r_inner = one.add(r.substitute_one("v")).add(b.substitute_one("v"))
        r_new = r_inner.mul(one_sb).scale(uv).shift_z()
        s, b, r = s_new, b_new, r_new
    return GsSolution(s, b, r)


@dataclass(frozen=True)
class CubicReport:
    """Residual check of the cubic identity and its two specializations."""

    main_ok: bool
    main_first_fail: int | None
    sepe_ok: bool
    sepe_first_fail: int | None
    dist_ok: bool
    dist_first_fail: int | None

    @property
    def ok(self) -> bool:
        return self.main_ok and self.sepe_ok and self.dist_ok


def verify_cubic(s_full: TruncatedSeries) -> CubicReport:
    """Check the degree-3 equation satisfied by S(s,t,1,1;z).

      S = t (z(s-1) + 1) S^3 + t z (2s-1) S^2 + z (ts+1) S + z

    together with its s = 1 and t = 1 specializations

      S(1,t) = t S^3 + t z S^2 + z (t+1) S + z
      S(s,1) = (sz - z + 1) S^2 + s z S + z.

    The input is the full four-variable solution; u and v are substituted
    here.  Residuals must vanish through the truncation order.
    """
    order = s_full.order
    S = s_full.substitute_one("u").substitute_one("v")
    one = TruncatedSeries.constant(order, _ONE)
    z1 = one.shift_z()

    def residual_main(series: TruncatedSeries) -> TruncatedSeries:
        s2 = series.mul(series)
        s3 = s2.mul(series)
        sm1 = _S.sub(_ONE)
        cubic_factor = one.scale(sm1).shift_z().add(one)  # z(s-1) + 1
        rhs = (
            s3.mul(cubic_factor).scale(_T)
            .add(s2.shift_z().scale(_T.mul(_S.scale(2).sub(_ONE))))
            .add(series.shift_z().scale(_T.mul(_S).add(_ONE)))
            .add(z1)
        )
        return series.sub(rhs)

    def residual_sepe(series: TruncatedSeries) -> TruncatedSeries:
        s2 = series.mul(series)
        s3 = s2.mul(series)
        rhs = (
            s3.scale(_T)
            .add(s2.shift_z().scale(_T))
            .add(series.shift_z().scale(_T.add(_ONE)))
            .add(z1)
        )
        return series.sub(rhs)

    def residual_dist(series: TruncatedSeries) -> TruncatedSeries:
        s2 = series.mul(series)
        szz1 = one.scale(_S.sub(_ONE)).shift_z().add(one)  # sz - z + 1
        rhs = s2.mul(szz1).add(series.shift_z().scale(_S)).add(z1)
        return series.sub(rhs)

    r_main = residual_main(S)
    r_sepe = residual_sepe(S.substitute_one("s"))
    r_dist = residual_dist(S.substitute_one("t"))
    return CubicReport(
        r_main.is_zero(),
        r_main.first_nonzero_order(),
        r_sepe.is_zero(),
        r_sepe.first_nonzero_order(),
        r_dist.is_zero(),
        r_dist.first_nonzero_order(),
    )


_021 = (Pattern((0, 2, 1)),)


def series_from_enumeration(n_max: int) -> TruncatedSeries:
    """Brute-force series: z^n coefficient is the joint (dist, asc, zero,
    ema) distribution over the 021-avoiding sequences of length n."""
    coeffs = [DistributionPolynomial.zero_poly(VARIABLES)]
    for n in range(1, n_max + 1):
        terms: dict[tuple[int, int, int, int], int] = {}
        for e in enumerate_avoiding_inversion_sequences(n, _021):
            key = (dist(e), asc(e), zero(e), ema(e))
            terms[key] = terms.get(key, 0) + 1
        coeffs.append(DistributionPolynomial(VARIABLES, terms))
    return TruncatedSeries(n_max, tuple(coeffs))


def path_statistics_polynomial(n: int, cls: str) -> DistributionPolynomial:
    """(turn, segment, red, return) distribution over a path class, by
    direct enumeration; the independent cross-check for the solved series."""
    terms: dict[tuple[int, int, int, int], int] = {}
    for p in enumerate_paths(n, cls):
        key = (turn(p), segment(p), red(p), return_(p))
        terms[key] = terms.get(key, 0) + 1
    return DistributionPolynomial(VARIABLES, terms)


# ---------------------------------------------------------------------------
# Schroder paths

@dataclass(frozen=True)
class SchroderPath:
    """Word over U=(1,1), D=(1,-1), F=(2,0) from (0,0) to (2n,0), never
    dipping below the axis."""

    steps: tuple[str, ...]

    def __post_init__(self) -> None:
        height = 0
        width = 0
        for s in self.steps:
            if s == "U":
                height += 1
                width += 1
            elif s == "D":
                height -= 1
                width += 1
            elif s == "F":
                width += 2
            else:
                raise ValidationError(f"unknown step {s!r}")
            if height < 0:
                raise ValidationError("path dips below the axis")
        if height != 0:
            raise ValidationError("path does not return to the axis")
        if width % 2:
            raise ValidationError("odd width")

    @property
    def half_width(self) -> int:
        return sum(2 if s == "F" else 1 for s in self.steps) // 2


def enumerate_schroder_paths(n: int) -> Iterator[SchroderPath]:
    """All Schroder n-paths, steps tried in the order D, F, U."""
    steps: list[str] = []

    def rec(width: int, height: int) -> Iterator[SchroderPath]:
        if width == 2 * n:
            if height == 0:
                yield SchroderPath(tuple(steps))
            return
        if height > 2 * n - width:
            return
        if height > 0:
            steps.append("D")
            yield from rec(width + 1, height - 1)
            steps.pop()
        if width + 2 <= 2 * n:
            steps.append("F")
            yield from rec(width + 2, height)
            steps.pop()
        steps.append("U")
        yield from rec(width + 1, height + 1)
        steps.pop()

    yield from rec(0, 0)


def schroder_ascents(path: SchroderPath) -> int:
    """Number of maximal runs of consecutive up steps."""
    count = 0
    prev_up = False
    for s in path.steps:
        if s == "U" and not prev_up:
            count += 1
        prev_up = s == "U"
    return count


def schroder_asc_polynomial(n: int) -> DistributionPolynomial:
    """Distribution of ascents over Schroder (n-1)-paths, in the variable s.

    Matches the distribution of distinct positive entries over 021-avoiding
    sequences of length n.
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    terms: dict[tuple[int], int] = {}
    for p in enumerate_schroder_paths(n - 1):
        k = (schroder_ascents(p),)
        terms[k] = terms.get(k, 0) + 1
    return DistributionPolynomial(("s",), terms)


def schroder_numbers(count: int) -> tuple[int, ...]:
    """The first ``count`` large Schroder numbers 1, 2, 6, 22, 90, 394, ...

    by the standard recurrence (n+1) a_n = 3 (2n-1) a_{n-1} - (n-2) a_{n-2}.
    """
    out: list[int] = []
    for n in range(count):
        if n == 0:
            out.append(1)
        elif n == 1:
            out.append(2)
        else:
            numerator = 3 * (2 * n - 1) * out[n - 1] - (n - 2) * out[n - 2]
            if numerator % (n + 1):
                raise ArithmeticError("recurrence must divide exactly")
            out.append(numerator // (n + 1))
    return tuple(out)
