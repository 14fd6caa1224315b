"""Kneser spectra, eigencomponent norms of family indicators, the linear
profile of a family, and the spectral inequality checkers.

Functions on the vertex set of K(n, k) are dense vectors indexed by colex
rank. All quantities are exact; the adjacency operator is applied through a
subset-sum transform over the 2^n lattice, so dense work is capped at n = 24.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .combinat import binom, colex_array, falling_ratio, from_mask, iter_colex, to_mask
from .family import Family, bipartite_edge_count, degree_profile, density, slice_family, star_densities
from .report import BoundReport
from .surd import Surd

DENSE_MAX_N = 24


@dataclass(frozen=True)
class SpectrumTable:
    n: int
    k: int
    eigenvalues: tuple[int, ...]
    multiplicities: tuple[int, ...]


def spectrum(n: int, k: int) -> SpectrumTable:
    if k < 0 or n < 2 * k + 1:
        raise ValueError(f"spectrum needs n >= 2k + 1 and k >= 0, got n={n}, k={k}")
    eig = tuple((-1) ** i * binom(n - k - i, k - i) for i in range(k + 1))
    mult = tuple(binom(n, i) - binom(n, i - 1) for i in range(k + 1))
    return SpectrumTable(n, k, eig, mult)


def vertex_masks(n: int, k: int) -> np.ndarray:
    """All k-subsets of [n] as words, in colex order."""
    return colex_array(n, k)


def _check_dense(n: int) -> None:
    if n > DENSE_MAX_N:
        raise ValueError(f"dense spectral work needs n <= {DENSE_MAX_N}, got n={n}")


def _apply_int(n: int, k: int, h: np.ndarray) -> np.ndarray:
    """(A h)(A_set) = sum of h over sets disjoint from A_set, integer vector."""
    masks = vertex_masks(n, k)
    bound = int(np.abs(h).max()) * binom(n - k, k) if len(h) else 0
    dtype = np.int64 if h.dtype != object and bound < 2**62 else object
    table = np.zeros(1 << n, dtype=dtype)
    table[masks] = h
    for i in range(n):
        v = table.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return table[((1 << n) - 1) ^ masks]


def adjacency_apply(n: int, k: int, g: Sequence) -> list[Fraction]:
    """Apply the K(n, k) adjacency matrix to a rational vector (colex-indexed)."""
    _check_dense(n)
    if len(g) != binom(n, k):
        raise ValueError(f"vector length {len(g)} != C({n},{k}) = {binom(n, k)}")
    g = [Fraction(x) for x in g]
    den = lcm(*(x.denominator for x in g)) if g else 1
    ints = [int(x * den) for x in g]
    big = max((abs(x) for x in ints), default=0) >= 2**62
    h = np.array(ints, dtype=object if big else np.int64)
    out = _apply_int(n, k, h)
    return [Fraction(int(x), den) for x in out]


def indicator(F: Family) -> np.ndarray:
    masks = vertex_masks(F.n, F.k)
    f = np.zeros(len(masks), dtype=np.int64)
    f[np.searchsorted(masks, np.array(F.masks, dtype=np.int64))] = 1
    return f


def adjacency_moments(F: Family, upto: Optional[int] = None) -> list[int]:
    """<f, A^j f> for j = 0..upto (default k), f the indicator of F."""
    _check_dense(F.n)
    f = indicator(F)
    v = f.copy()
    out = [int(f.sum())]
    for _ in range(F.k if upto is None else upto):
        v = _apply_int(F.n, F.k, v)
        out.append(int((v * f).sum()))
    return out


def _lagrange_rows(eigs: Sequence[int]) -> list[list[Fraction]]:
    """Row i holds the monomial coefficients of the Lagrange basis polynomial
    that is 1 at eigs[i] and 0 at the other eigenvalues."""
    rows = []
    for i, li in enumerate(eigs):
        coeffs = [Fraction(1)]
        for j, lj in enumerate(eigs):
            if j == i:
                continue
            scale = Fraction(1, li - lj)
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for d, c in enumerate(coeffs):
                nxt[d + 1] += c * scale
                nxt[d] -= c * lj * scale
            coeffs = nxt
        rows.append(coeffs)
    return rows


def eigencomponent_norms(F: Family) -> list[Fraction]:
    """Squared norms of the projections of 1_F onto the k+1 eigenspaces.

    Solves the Vandermonde system m_j = sum_i eig_i^j * ||f_i||^2 exactly.
    """
    table = spectrum(F.n, F.k)
    moments = adjacency_moments(F)
    rows = _lagrange_rows(table.eigenvalues)
    norms = [sum((c * m for c, m in zip(row, moments)), Fraction(0)) for row in rows]
    if any(x < 0 for x in norms):
        raise ArithmeticError(f"negative eigencomponent norm {norms}")
    return norms


@dataclass(frozen=True)
class SpectralProfile:
    n: int
    k: int
    size: int
    alpha: Fraction
    gamma: tuple[Fraction, ...]
    gamma_max: Fraction
    a: tuple[Fraction, ...]
    eta: Fraction
    eigennorm_sq: Optional[tuple[Fraction, ...]]

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "gamma": [str(x) for x in self.gamma],
            "gamma_max": str(self.gamma_max),
            "a": [str(x) for x in self.a],
            "eta": str(self.eta),
            "eigennorm_sq": None if self.eigennorm_sq is None else [str(x) for x in self.eigennorm_sq],
        }


def linear_profile(F: Family, with_norms: Optional[bool] = None) -> SpectralProfile:
    """Density, star densities, linear coefficients and eta = ||f_1||^2/||f||^2.

    eta comes from the closed form eta * alpha = (sum_i a_i^2)(p - p_2) with
    p_2 the second falling ratio; when the dense path is available the full
    eigencomponent norms are attached and must agree with it.
    """
    n, k = F.n, F.k
    if k < 1 or n < 2 * k + 1:
        raise ValueError(f"linear profile needs k >= 1 and n >= 2k + 1, got n={n}, k={k}")
    if len(F) == 0:
        raise ValueError("linear profile of the empty family is undefined")
    alpha = density(F)
    gamma = tuple(star_densities(F))
    scale = Fraction(n - 1, n - k)
    a = tuple(scale * (g - alpha) for g in gamma)
    spread = falling_ratio(n, k, 1) - falling_ratio(n, k, 2)
    eta = sum((x * x for x in a), Fraction(0)) * spread / alpha
    if with_norms is None:
        with_norms = n <= 16
    norms = None
    if with_norms:
        norms = tuple(eigencomponent_norms(F))
        if norms[1] != eta * len(F):
            raise ArithmeticError(f"eta mismatch: closed form {eta}, eigen route {norms[1] / len(F)}")
    return SpectralProfile(n, k, len(F), alpha, gamma, max(gamma), a, eta, norms)


def check_gammamax(profile: SpectralProfile) -> BoundReport:
    """eta^3 <= r^3 gamma_max^2 + 3 r^2 eta alpha with r = (n-1)/(n-k)."""
    n, k = profile.n, profile.k
    r = Fraction(n - 1, n - k)
    rhs = r**3 * profile.gamma_max**2 + 3 * r**2 * profile.eta * profile.alpha
    report = BoundReport(
        name="gammamax",
        value=Surd(rhs),
        kind="upper",
        hypothesis="n >= 2k + 1, F nonempty",
        hypothesis_ok=n >= 2 * k + 1 and profile.size > 0,
    )
    return report.compare(profile.eta**3)


def thirdorder_bound(profile: SpectralProfile) -> Fraction:
    """Lower bound on the average degree 2e(F)/|F| from alpha and eta."""
    n, k = profile.n, profile.k
    q = Fraction(k, n - k)
    return (profile.alpha - q * (profile.eta + q * q)) * binom(n - k, k)


def check_thirdorder(F: Family, profile: Optional[SpectralProfile] = None) -> BoundReport:
    profile = profile or linear_profile(F, with_norms=False)
    report = BoundReport(
        name="thirdorder",
        value=Surd(thirdorder_bound(profile)),
        kind="lower",
        hypothesis="n >= 2k + 1, F nonempty",
        hypothesis_ok=True,
    )
    e = degree_profile(F).edge_count
    return report.compare(Fraction(2 * e, len(F)))


# --- expander mixing --------------------------------------------------------------

def mixing_bounds(gamma: Fraction, beta: Fraction, n: int, k: int) -> tuple[Optional[Surd], Optional[Surd]]:
    """Lower bounds on e/|C| and e/|B| for a star/complement split.

    C is the link of a star (density ``gamma`` among (k-1)-sets of [n-1]) and
    B the sets avoiding it (density ``beta`` among k-sets of [n-1]). A bound
    is ``None`` (vacuous) when its dividing density is zero.
    """
    if n < 2 * k + 1:
        raise ValueError("mixing bounds need n >= 2k + 1")
    gamma, beta = Fraction(gamma), Fraction(beta)
    if not (0 <= gamma <= 1 and 0 <= beta <= 1):
        raise ValueError("densities must lie in [0, 1]")
    q = Fraction(k, n - k)
    first = second = None
    if gamma > 0:
        c = binom(n - k, k)
        first = Surd(c * beta, -c * q, beta / gamma)
    if beta > 0:
        c = binom(n - k - 1, k - 1)
        second = Surd(c * gamma, -c * q, gamma * (1 - gamma) / beta)
    return first, second


def star_split_check(F: Family, x: int) -> tuple[BoundReport, BoundReport]:
    """Measure e(C, B) for the split of ``F`` by element ``x`` and test both
    mixing bounds exactly."""
    n, k = F.n, F.k
    C, _ = slice_family(F, [x], [x])
    B, _ = slice_family(F, [x], [])
    gamma = Fraction(len(C), binom(n - 1, k - 1))
    beta = Fraction(len(B), binom(n - 1, k))
    e = bipartite_edge_count(C, B)
    first, second = mixing_bounds(gamma, beta, n, k)
    hyp = "n >= 2k + 1"
    r1 = BoundReport("kneserexpander_star", first, "lower", hyp, n >= 2 * k + 1)
    r2 = BoundReport("kneserexpander_complement", second, "lower", hyp, n >= 2 * k + 1)
    r1 = r1.compare(Fraction(e, len(C)) if len(C) else 0)
    r2 = r2.compare(Fraction(e, len(B)) if len(B) else 0)
    return r1, r2


def singular_ratio_bound(n: int, k: int, l: int) -> Fraction:
    """The ratio k/(n-l) used as a stand-in for sigma_2/sigma_1 of the
    k-set/l-set bipartite Kneser graph.

    It is exact for k = l but too small when k < l (the true ratio is
    sqrt(kl/((n-k)(n-l)))); l/(n-k) is a valid bound in all cases.
    """
    if not (0 <= k <= l and 2 * l <= n):
        raise ValueError(f"need k <= l <= n/2, got n={n}, k={k}, l={l}")
    return Fraction(k, n - l)


def bipartite_singular_values_sq(n: int, k: int, l: int) -> list[Fraction]:
    """Exact squared singular values of the bipartite Kneser graph between
    k-sets and l-sets, one per isotypic level i = 0..k.

    Level i is probed with the lifted alternating vector built on i disjoint
    pairs; the Gram operator acts on each level as a scalar.
    """
    if not (0 <= k <= l and 2 * l <= n):
        raise ValueError(f"need k <= l <= n/2, got n={n}, k={k}, l={l}")
    ks = list(iter_colex(n, k))
    ls = list(iter_colex(n, l))
    out = []
    for i in range(k + 1):
        pairs = [(1 << (2 * j), 1 << (2 * j + 1)) for j in range(i)]
        x = {}
        for choice in range(1 << i):
            mask, sign = 0, 1
            for j, (a, b) in enumerate(pairs):
                if choice >> j & 1:
                    mask |= b
                    sign = -sign
                else:
                    mask |= a
            x[mask] = sign
        v = [sum(s for m, s in x.items() if m & K == m) for K in ks]
        w = [sum(vk for K, vk in zip(ks, v) if not K & L) for L in ls]
        nv = sum(t * t for t in v)
        out.append(Fraction(sum(t * t for t in w), nv))
    return out


def bipartite_singular_values_sq_closed(n: int, k: int, l: int) -> list[Fraction]:
    """Closed form of the level-i squared singular values,
    C(n-l-i, k-i)^2 * C(n-2i, l-i) / C(n-2i, k-i)."""
    if not (0 <= k <= l and 2 * l <= n):
        raise ValueError(f"need k <= l <= n/2, got n={n}, k={k}, l={l}")
    return [
        Fraction(binom(n - l - i, k - i) ** 2 * binom(n - 2 * i, l - i), binom(n - 2 * i, k - i))
        for i in range(k + 1)
    ]


def second_singular_ratio_sq(n: int, k: int, l: int) -> Fraction:
    """(sigma_2 / sigma_1)^2, exactly. Equals kl / ((n-k)(n-l)) for k >= 1,
    which exceeds (k/(n-l))^2 whenever k < l."""
    sv = bipartite_singular_values_sq_closed(n, k, l)
    return max(sv[1:], default=Fraction(0)) / sv[0]


def expander_mixing_check(
    X: Family, Y: Family, ratio_sq: Optional[Fraction] = None
) -> tuple[BoundReport, BoundReport]:
    """Biregular mixing lemma for X (k-sets) and Y (l-sets).

    The singular-value ratio defaults to k/(n-l); pass ``ratio_sq`` (the
    square of the ratio, e.g. from :func:`second_singular_ratio_sq`) to use
    another one. Returns the sharp form (with the 1-alpha, 1-beta factors)
    and the weak form; both measure |e(X,Y)/e(U,V) - alpha*beta|.
    """
    if X.n != Y.n:
        raise ValueError("X and Y must share the ground set")
    n, k, l = X.n, X.k, Y.k
    if k > l:
        X, Y, k, l = Y, X, l, k
    if ratio_sq is None:
        r2 = singular_ratio_bound(n, k, l) ** 2
    else:
        r2 = Fraction(ratio_sq)
    alpha = Fraction(len(X), binom(n, k))
    beta = Fraction(len(Y), binom(n, l))
    e_total = binom(n, k) * binom(n - k, l)
    dev = abs(Fraction(bipartite_edge_count(X, Y), e_total) - alpha * beta)
    hyp = "k <= l <= n/2"
    sharp = BoundReport("mixing_sharp", Surd(0, 1, r2 * alpha * (1 - alpha) * beta * (1 - beta)), "upper", hyp, True)
    weak = BoundReport("mixing_weak", Surd(0, 1, r2 * alpha * beta), "upper", hyp, True)
    return sharp.compare(dev), weak.compare(dev)


def sets_to_vector(n: int, k: int, values: dict) -> list[Fraction]:
    """Dense colex-indexed vector from a {k-set tuple: value} mapping."""
    masks = vertex_masks(n, k)
    out = [Fraction(0)] * len(masks)
    pos = {int(m): i for i, m in enumerate(masks)}
    for s, val in values.items():
        out[pos[to_mask(s)]] = Fraction(val)
    return out


def vector_to_sets(n: int, k: int, vec: Sequence) -> dict:
    masks = vertex_masks(n, k)
    return {from_mask(int(m)): v for m, v in zip(masks, vec)}
