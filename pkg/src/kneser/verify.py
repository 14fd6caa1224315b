"""Self-check suites: exact identities, theorem instances, construction
formulas and oracle agreement, each returning a machine-readable result."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

import numpy as np

from .bounds import (
    binomratio,
    construction_upper_bound,
    convert,
    jump_holds,
    lower_bound_level,
    main_lower_bound,
    random_expected_degree,
    stars_max_degree,
    upper_bound_level,
)
from .combinat import binom, colex_array, count_from_lambda, iter_colex, union_of_stars_size
from .constructions import ConstructionSpec, explicit_family, order_segment, random_family, union_of_stars
from .family import Family, degree_profile
from .search import OBJECTIVES, exact_minimize, greedy_matching, max_matching_size
from .spectral import (
    adjacency_moments,
    check_gammamax,
    check_thirdorder,
    eigencomponent_norms,
    expander_mixing_check,
    linear_profile,
    second_singular_ratio_sq,
    spectrum,
    star_split_check,
)

log = logging.getLogger(__name__)

SUITES = ("spectral", "mixing", "bounds", "oracle")


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    families_checked: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, what: "str | Callable[[], str]") -> None:
        """Count a check; ``what`` may be a thunk so messages are only built
        on failure."""
        self.checks += 1
        if not cond:
            self.failures.append(what() if callable(what) else what)

    def theorems(self, F: Family) -> None:
        """Run the gammamax and third-order checks on a nonempty family in
        K(n, k) with n >= 2k + 1."""
        if not len(F) or F.k < 1 or F.n < 2 * F.k + 1:
            return
        prof = linear_profile(F, with_norms=False)
        g = check_gammamax(prof)
        t = check_thirdorder(F, prof)
        self.families_checked += 1
        self.expect(g.holds, lambda: f"gammamax violated on {F!r}")
        self.expect(t.holds, lambda: f"thirdorder violated on {F!r}")

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checks": self.checks,
            "families_checked": self.families_checked,
            "failures": self.failures[:50],
            "failure_count": len(self.failures),
            "info": self.info,
            "seconds": round(self.seconds, 3),
        }


def random_families(n: int, k: int, count: int, seed: int, nonempty: bool = True) -> list[Family]:
    """Seeded random families: each draws a density, then keeps every
    vertex independently with that probability."""
    rng = np.random.Generator(np.random.PCG64(seed))
    verts = colex_array(n, k)
    out = []
    while len(out) < count:
        d = rng.random()
        keep = rng.random(len(verts)) < d
        if nonempty and not keep.any():
            continue
        out.append(Family._trusted(n, k, verts[keep]))
    return out


def _timed(fn: Callable[[SuiteResult, int], None]) -> Callable[[int], SuiteResult]:
    def run(seed: int = 0) -> SuiteResult:
        res = SuiteResult(fn.__name__.removeprefix("suite_"))
        t0 = time.perf_counter()
        fn(res, seed)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# --- individual checks (also used directly by the test-suite) -------------------------

def check_moments(res: SuiteResult, cases: Iterable[tuple[int, int]], count: int, seed: int) -> None:
    """Moment identity for j <= k (and the independent j = k + 1), plus
    <f, Af> = 2e(F)."""
    for n, k in cases:
        table = spectrum(n, k)
        for F in random_families(n, k, count, seed + 1000 * n + k):
            norms = eigencomponent_norms(F)
            moments = adjacency_moments(F, upto=k + 1)
            for j, mj in enumerate(moments):
                pred = sum((lam**j * x for lam, x in zip(table.eigenvalues, norms)), Fraction(0))
                res.expect(pred == mj, lambda: f"moment j={j} mismatch in K({n},{k}) for {F!r}")
            res.expect(moments[1] == 2 * degree_profile(F).edge_count, f"<f,Af> != 2e in K({n},{k})")
            res.expect(all(x >= 0 for x in norms), f"negative norm in K({n},{k})")
            res.theorems(F)


def check_spectrum_tables(res: SuiteResult, n_max: int = 30, k_max: int = 10) -> None:
    for k in range(k_max + 1):
        for n in range(2 * k + 1, n_max + 1):
            t = spectrum(n, k)
            res.expect(
                t.eigenvalues == tuple((-1) ** i * binom(n - k - i, k - i) for i in range(k + 1)),
                f"eigenvalues K({n},{k})",
            )
            res.expect(
                t.multiplicities == tuple(binom(n, i) - binom(n, i - 1) for i in range(k + 1)),
                f"multiplicities K({n},{k})",
            )
            res.expect(sum(t.multiplicities) == binom(n, k), f"dimension K({n},{k})")
            # trace identities: tr A = 0, tr A^2 = 2|E|
            tr1 = sum(m * e for m, e in zip(t.multiplicities, t.eigenvalues))
            tr2 = sum(m * e * e for m, e in zip(t.multiplicities, t.eigenvalues))
            if k >= 1:
                res.expect(tr1 == 0 and tr2 == binom(n, k) * binom(n - k, k), f"traces K({n},{k})")
    t = spectrum(5, 2)
    res.expect(t.eigenvalues == (3, -2, 1) and t.multiplicities == (1, 4, 5), "K(5,2) table")


def check_star_law(res: SuiteResult, n_max: int = 20, norms_n_max: int = 12) -> None:
    """Every star: eta = 1 - k/n and nothing above level 1."""
    for n in range(3, n_max + 1):
        for k in range(1, (n - 1) // 2 + 1):
            for x in range(1, n + 1):
                F = Family.star(n, k, x)
                prof = linear_profile(F, with_norms=False)
                res.expect(prof.eta == 1 - Fraction(k, n), f"star eta K({n},{k}) x={x}")
                high = len(F) - prof.alpha**2 * binom(n, k) - prof.eta * len(F)
                res.expect(high == 0, f"star high levels K({n},{k}) x={x}")
                if n <= norms_n_max:
                    norms = eigencomponent_norms(F)
                    res.expect(all(v == 0 for v in norms[2:]), f"star eigen route K({n},{k}) x={x}")
                    res.expect(norms[1] == prof.eta * len(F), f"star eta eigen K({n},{k}) x={x}")
                if x == 1:
                    res.theorems(F)
    res.expect(linear_profile(Family.star(5, 2, 1)).eta == Fraction(3, 5), "K(5,2) star eta")


def check_mixing_pairs(res: SuiteResult, count: int, seed: int) -> None:
    """Mixing lemma with the k/(n-l) ratio on C([8],3) x C([8],4)."""
    xs = random_families(8, 3, count, seed + 31, nonempty=False)
    ys = random_families(8, 4, count, seed + 41, nonempty=False)
    exact_sq = second_singular_ratio_sq(8, 3, 4)
    sharp_bad = sharp_exact_bad = 0
    for X, Y in zip(xs, ys):
        sharp, weak = expander_mixing_check(X, Y)
        res.expect(weak.holds, f"mixing violated: |X|={len(X)}, |Y|={len(Y)}")
        sharp_bad += not sharp.holds
        sharp_exact_bad += not expander_mixing_check(X, Y, exact_sq)[0].holds
        res.theorems(X)
    res.info["mixing_pairs"] = count
    res.info["sharp_form_violations_with_k_over_n_minus_l"] = sharp_bad
    res.info["sharp_form_violations_with_exact_ratio"] = sharp_exact_bad
    res.info["exact_sigma2_over_sigma1_sq"] = str(exact_sq)
    res.expect(sharp_exact_bad == 0, "sharp mixing form fails with the exact singular ratio")


def check_star_splits(res: SuiteResult, count: int, seed: int) -> None:
    rng = np.random.Generator(np.random.PCG64(seed + 77))
    fams = random_families(9, 3, count, seed + 53)
    for F in fams:
        x = int(rng.integers(1, 10))
        r1, r2 = star_split_check(F, x)
        res.expect(r1.holds and r2.holds, lambda: f"star split violated at x={x} for {F!r}")
        res.theorems(F)
    F = Family.from_sets(5, 2, [(1, 5), (2, 5), (3, 5), (4, 5), (1, 2)])
    r1, r2 = star_split_check(F, 5)
    res.expect(r2.value is not None and r2.value.as_fraction() == 2 and r2.measured == 2, "equality witness")
    res.expect(r1.holds and r2.holds, "equality witness verdicts")
    res.info["star_splits"] = count


def check_explicit_grid(res: SuiteResult) -> None:
    built = 0
    for k in (1, 2, 3):
        for s in (1, 2):
            for n in (12 * k * s, 12 * k * s + 7, 24 * k * s):
                for lam in (Fraction(s), s + Fraction(1, 2), Fraction(s + 1)):
                    if count_from_lambda(n, k, s, lam).denominator != 1:
                        continue
                    spec = ConstructionSpec(n, k, s, lam)
                    F, _ = explicit_family(spec)
                    delta = degree_profile(F).max_degree
                    ub = construction_upper_bound(n, k, s, lam)
                    res.expect(len(F) == spec.target_size(), f"explicit size {spec}")
                    res.expect(delta < ub.value.as_fraction(), f"explicit degree {delta} vs {ub.display()} at {spec}")
                    res.theorems(F)
                    built += 1
    F, t = explicit_family(ConstructionSpec(24, 2, 1, Fraction(3, 2)))
    delta = degree_profile(F).max_degree
    ub = construction_upper_bound(24, 2, 1, Fraction(3, 2)).value.as_fraction()
    res.expect((len(F), t, delta, ub) == (34, 19, 16, Fraction(91, 4)), "explicit (24,2,1,3/2) trace")
    res.info["explicit_grid_builds"] = built


def check_union_of_stars(res: SuiteResult, n_max: int = 20) -> None:
    for s in range(1, 5):
        for k in range(1, 6):
            for n in range(2 * k + s, n_max + 1):
                F = union_of_stars(n, k, range(1, s + 1))
                res.expect(len(F) == union_of_stars_size(n, k, s), f"stars size ({n},{k},{s})")
                res.expect(
                    degree_profile(F).max_degree == stars_max_degree(n, k, s), f"stars degree ({n},{k},{s})"
                )
                res.theorems(F)


def check_random_construction(res: SuiteResult, seeds: int = 200) -> None:
    n, k, s, lam = 40, 2, 1, Fraction(3, 2)
    target = int(count_from_lambda(n, k, s, lam))
    head = (1 << (s + 1)) - 1
    means = []
    for seed in range(seeds):
        F = random_family(ConstructionSpec(n, k, s, lam, seed))
        res.expect(len(F) == target, f"random size seed={seed}")
        res.theorems(F)
        degs = degree_profile(F).degrees
        single = [d for a, d in zip(F.masks, degs) if bin(a & head).count("1") == 1]
        means.append(Fraction(sum(single), len(single)))
    mean = sum(means) / len(means)
    expected = random_expected_degree(n, k, s, lam)
    res.info["random_mean_degree"] = float(mean)
    res.info["random_expected_degree"] = str(expected)
    res.expect(abs(mean - expected) <= expected / 10, f"random mean degree {float(mean)} vs {expected}")


def check_bound_curves(res: SuiteResult) -> None:
    for s in (1, 2, 3):
        p = Fraction(1, 10000 * s**5)
        n, k = 10000 * s**5, 1
        for lam in (s + Fraction(j, 4) for j in range(5)):
            lo = lower_bound_level(s, lam, p)
            hi = upper_bound_level(s, lam, p)
            res.expect(lo <= hi, f"level order s={s} lam={lam}")
            lo_r = main_lower_bound(n, k, s, lam)
            hi_r = construction_upper_bound(n, k, s, lam)
            res.expect(lo_r.value <= hi_r.value, f"bound order s={s} lam={lam}")
        res.expect(jump_holds(s, p), f"jump at s={s}")


def check_helpers(res: SuiteResult, seed: int) -> None:
    for n in range(1, 25):
        for k in range(0, n + 1):
            for m in range(k, n + 1):
                res.expect(binomratio(n, k, m).holds, f"binomratio ({n},{k},{m})")
    for n, k in ((8, 2), (9, 3), (10, 3), (10, 4)):
        for F in random_families(n, k, 40, seed + 7 * n + k):
            for s in range(1, k + 1):
                up, low = convert(F, s)
                res.expect(up.holds and low.holds, lambda: f"convert s={s} on {F!r}")
            res.theorems(F)


def check_oracle(res: SuiteResult) -> None:
    for n, k, top in ((5, 2, 10), (6, 2, 15)):
        for m in range(1, top + 1):
            for obj in OBJECTIVES:
                a = exact_minimize(n, k, m, obj, mode="bnb")
                b = exact_minimize(n, k, m, obj, mode="exhaustive")
                res.expect(a.optimum == b.optimum, f"B&B {a.optimum} != exhaustive {b.optimum} at ({n},{k},{m},{obj})")
                res.theorems(a.witness)
    res.expect(exact_minimize(5, 2, 5, "max_degree").optimum == 1, "Petersen m=5 min degree")
    res.expect(exact_minimize(5, 2, 5, "edge_count").optimum == 2, "Petersen m=5 min edges")
    res.expect(degree_profile(order_segment("lex", 5, 2, 5)).edge_count == 2, "lex segment edges")


def check_matchings(res: SuiteResult, n: int = 5, k: int = 2, top: int = 6) -> None:
    verts = list(iter_colex(n, k))
    gaps = 0
    total = 0
    for size in range(1, top + 1):
        for combo in combinations(verts, size):
            F = Family(n, k, combo)
            g = greedy_matching(F)
            masks = [sum(1 << (e - 1) for e in s) for s in g.members]
            valid = all(not a & b for a, b in combinations(masks, 2)) and all(m in F for m in masks)
            res.expect(valid, lambda: f"greedy matching invalid on {F!r}")
            res.theorems(F)
            best = max_matching_size(F)
            res.expect(g.size <= best, lambda: f"greedy above maximum on {F!r}")
            if size >= 5:
                res.expect(g.size >= 2, lambda: f"greedy below 2 on {F!r}")
            if g.size != best:
                gaps += 1
            total += 1
    res.info["matching_families"] = total
    res.info["matching_gaps"] = gaps
    res.expect(gaps == 0, f"greedy matching below maximum on {gaps} families")


# --- suites ----------------------------------------------------------------------------

@_timed
def suite_spectral(res: SuiteResult, seed: int) -> None:
    """Moment identities, spectrum tables and the star law."""
    check_moments(res, ((5, 2), (7, 3), (9, 4)), 200, seed)
    check_spectrum_tables(res)
    check_star_law(res)


@_timed
def suite_mixing(res: SuiteResult, seed: int) -> None:
    """Random mixing pairs and star/complement splits."""
    check_mixing_pairs(res, 1000, seed)
    check_star_splits(res, 1000, seed)


@_timed
def suite_bounds(res: SuiteResult, seed: int) -> None:
    """Construction formulas, bound curves and helper inequalities."""
    check_explicit_grid(res)
    check_union_of_stars(res)
    check_random_construction(res)
    check_bound_curves(res)
    check_helpers(res, seed)


@_timed
def suite_oracle(res: SuiteResult, seed: int) -> None:
    """Branch and bound against exhaustive search, and greedy matchings."""
    check_oracle(res)
    check_matchings(res)


RUNNERS = {
    "spectral": suite_spectral,
    "mixing": suite_mixing,
    "bounds": suite_bounds,
    "oracle": suite_oracle,
}


def run(suite: str, seed: int = 0) -> list[SuiteResult]:
    if suite == "all":
        names = list(SUITES)
    elif suite in RUNNERS:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}")
    out = []
    for name in names:
        log.info("running %s suite", name)
        out.append(RUNNERS[name](seed))
    return out
