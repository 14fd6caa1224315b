"""Evaluators for the named degree bounds and helper inequalities.

Each evaluator returns a :class:`~kneser.report.BoundReport` carrying its own
hypothesis text and flag. Values are exact: rationals, or ``a + b*sqrt(d)``
surds whose display is rounded in the safe direction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .combinat import binom
from .family import Family, degree_profile, slice_family, star_densities
from .report import BoundReport
from .surd import Surd


def _check_lambda(s: int, lam: Fraction) -> Fraction:
    lam = Fraction(lam)
    if s < 0:
        raise ValueError("s must be non-negative")
    if not s <= lam <= s + 1:
        raise ValueError(f"lambda={lam} outside [{s}, {s + 1}]")
    return lam


def lower_bound_level(s: int, lam: Fraction, p: Fraction) -> Surd:
    """s*lam/(s+1) - 11*(sqrt(s^3 p) + s^3 p), the lower bound in units of
    C(n-k-1, k-1)."""
    lam = _check_lambda(s, lam)
    p = Fraction(p)
    q = s**3 * p
    return Surd(Fraction(s) * lam / (s + 1) - 11 * q, -11, q)


def upper_bound_level(s: int, lam: Fraction, p: Fraction) -> Fraction:
    """s*lam/(s+1) + 4*s*p, the construction's degree bound in units of
    C(n-k-1, k-1)."""
    lam = _check_lambda(s, lam)
    return Fraction(s) * lam / (s + 1) + 4 * s * Fraction(p)


def main_lower_bound(n: int, k: int, s: int, lam: Fraction) -> BoundReport:
    """Lower bound on the maximum degree of a family with size parameter
    ``lam`` that is not a union of s stars."""
    if n < 2 * k + 1:
        raise ValueError(f"need n >= 2k + 1, got n={n}, k={k}")
    level = lower_bound_level(s, lam, Fraction(k, n))
    value = level * binom(n - k - 1, k - 1)
    return BoundReport(
        "main_lower_bound", value, "lower", "n >= 10000*s^2*k", n >= 10000 * s * s * k
    )


def construction_upper_bound(n: int, k: int, s: int, lam: Fraction, force: bool = False) -> BoundReport:
    """Degree bound satisfied by the explicit construction.

    Outside ``n >= 12ks`` this raises unless ``force`` is set, in which case
    the report is flagged as an unconditional evaluation.
    """
    ok = n >= 12 * k * s
    if not (ok or force):
        raise ValueError(f"construction bound needs n >= 12ks = {12 * k * s}, got n={n}")
    value = upper_bound_level(s, lam, Fraction(k, n)) * binom(n - k - 1, k - 1)
    return BoundReport(
        "construction_upper_bound", Surd.of(value), "upper", "n >= 12*k*s", ok, forced=not ok
    )


def random_expected_degree(n: int, k: int, s: int, lam: Fraction) -> Fraction:
    """Expected degree of a singleton-intersection member in the random
    construction."""
    lam = _check_lambda(s, lam)
    head = Fraction(s) * lam / (s + 1) * binom(n - k - s, k - 1)
    core = sum(binom(s, i) * binom(n - k - s, k - i) for i in range(2, s + 1))
    return head + core


def stars_max_degree(n: int, k: int, s: int) -> int:
    """Maximum degree of a union of s stars."""
    if n < 2 * k or s < 1:
        raise ValueError(f"need n >= 2k and s >= 1, got n={n}, k={k}, s={s}")
    return binom(n - k, k) - binom(n - k - s + 1, k)


def threshold_evaluators(
    kind: str, n: int, k: int, s: int, lam: Fraction, c0: Optional[Fraction] = None
) -> BoundReport:
    """Star-density thresholds used inside the lower-bound argument.

    ``extlem3``: lam/(s+1) - sqrt(2(s+1)p/c0) - (s^2+4s)p, needs c0 > 0.
    ``manylem3``: lam/(s+1) - sqrt(40(s+1)p) - (s^2+4s)p.
    """
    lam = _check_lambda(s, lam)
    p = Fraction(k, n)
    base = lam / (s + 1) - (s * s + 4 * s) * p
    if kind == "extlem3":
        if c0 is None or Fraction(c0) <= 0:
            raise ValueError("extlem3 needs c0 > 0")
        value = Surd(base, -1, 2 * (s + 1) * p / Fraction(c0))
        return BoundReport("extlem3", value, "lower", "n >= 12*s*k", n >= 12 * s * k)
    if kind == "manylem3":
        value = Surd(base, -1, 40 * (s + 1) * p)
        return BoundReport("manylem3", value, "lower", "n >= 100*s^2*k", n >= 100 * s * s * k)
    raise ValueError(f"unknown threshold {kind!r}")


def binomratio(n: int, k: int, m: int) -> BoundReport:
    """C(m,k)/C(n,k) >= 1 - k(n-m)/(n-k+1), checked exactly."""
    if not 0 <= k <= m <= n:
        raise ValueError(f"need k <= m <= n, got n={n}, k={k}, m={m}")
    value = 1 - Fraction(k * (n - m), n - k + 1)
    report = BoundReport("binomratio", Surd.of(value), "lower", "k <= m <= n", True)
    return report.compare(Fraction(binom(m, k), binom(n, k)))


def convert(F: Family, s: int) -> tuple[BoundReport, BoundReport]:
    """Sandwich gt + s*p > g >= gt*(1 - 2sp) between the star density g of
    element 1 and gt, the density of the slice meeting [s+1] exactly in {1}.

    Returns the strict upper report and the lower report, both measured at g.
    """
    n, k = F.n, F.k
    if not (1 <= s <= k and 2 * k <= n):
        raise ValueError(f"need 1 <= s <= k <= n/2, got n={n}, k={k}, s={s}")
    p = Fraction(k, n)
    gamma = star_densities(F)[0]
    sl, _ = slice_family(F, range(1, s + 2), [1])
    gt = Fraction(len(sl), binom(n - s - 1, k - 1))
    hyp = "s <= k <= n/2"
    upper = BoundReport("convert_upper", Surd.of(gt + s * p), "upper", hyp, True, strict=True)
    lower = BoundReport("convert_lower", Surd.of(gt * (1 - 2 * s * p)), "lower", hyp, True)
    return upper.compare(gamma), lower.compare(gamma)


def helper_inequalities(n: int, k: int, m_or_s: int, F: Optional[Family] = None) -> list[BoundReport]:
    """binomratio at (n, k, m) when no family is given; otherwise the
    conversion sandwich for ``F`` with s = ``m_or_s``."""
    if F is None:
        return [binomratio(n, k, m_or_s)]
    if (F.n, F.k) != (n, k):
        raise ValueError("family does not live in K(n, k)")
    return list(convert(F, m_or_s))


def almost_intersecting(F: Family, l: int) -> bool:
    """True iff every member is disjoint from at most l others."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return degree_profile(F).max_degree <= l


def jump_holds(s: int, p: Fraction) -> bool:
    """Whether the lower-bound level just above lam = s already exceeds s - 1,
    i.e. whether the degree jumps once a family outgrows s stars.

    The level is increasing in lam, so checking lam = s itself suffices.
    """
    if s < 1:
        raise ValueError("s must be positive")
    return lower_bound_level(s, Fraction(s), p) >= s - 1
