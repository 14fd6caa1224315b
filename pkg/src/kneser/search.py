"""Exact and heuristic minimisation of the induced maximum degree / edge
count, the greedy matching procedure, and finite conjecture reports.

Vertices of K(n, k) are indexed by colex rank. A family is compared with
another by its increasing tuple of ranks; "colex-least" below means least in
that lexicographic sense.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, islice, permutations
from typing import Iterator, Optional, Sequence

import numpy as np

from .combinat import binom, from_mask, iter_colex, size_parameter, to_mask
from .constructions import ConstructionSpec, explicit_family, order_segment, union_of_stars
from .family import Family, degree_profile

OBJECTIVES = ("max_degree", "edge_count")
BNB_MAX_VERTICES = 36
EXHAUSTIVE_MAX = 10**7
PERM_TABLE_MAX_N = 8
LOCAL_MAX_VERTICES = 10**6

SPARSE_CAVEAT = "n is sufficiently large compared to k and s"
EQUALITY_CAVEAT = "n >= 10000*s^5*k"


@dataclass(frozen=True)
class SearchResult:
    objective: str
    optimum: int
    witness: Family
    nodes_explored: int
    proven_optimal: bool

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "optimum": self.optimum,
            "n": self.witness.n,
            "k": self.witness.k,
            "m": len(self.witness),
            "witness": [list(s) for s in self.witness.sets()],
            "nodes_explored": self.nodes_explored,
            "proven_optimal": self.proven_optimal,
        }


@dataclass(frozen=True)
class MatchingResult:
    members: tuple[tuple[int, ...], ...]
    size: int
    note: Optional[str] = None

    def to_dict(self) -> dict:
        out = {"size": self.size, "members": [list(s) for s in self.members]}
        if self.note:
            out["note"] = self.note
        return out


def _objective_of(F: Family, objective: str) -> int:
    prof = degree_profile(F)
    if objective == "max_degree":
        return prof.max_degree
    if objective == "edge_count":
        return prof.edge_count
    raise ValueError(f"unknown objective {objective!r}")


def _check_objective(objective: str) -> None:
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; choose from {OBJECTIVES}")


# --- the graph ---------------------------------------------------------------------

class _Kneser:
    """K(n, k) with vertices as colex ranks and neighbourhoods as int bitsets."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.masks = list(iter_colex(n, k))
        self.index = {m: i for i, m in enumerate(self.masks)}
        N = len(self.masks)
        self.adj = [0] * N
        for i, a in enumerate(self.masks):
            bits = 0
            for j, b in enumerate(self.masks):
                if not a & b:
                    bits |= 1 << j
            self.adj[i] = bits
        self._perms: Optional[np.ndarray] = None
        self._swaps: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.masks)

    def matrix(self) -> np.ndarray:
        N = len(self.masks)
        arr = np.array(self.masks, dtype=np.uint64)
        return (arr[:, None] & arr[None, :]) == 0 if N else np.zeros((0, 0), bool)

    def _image_table(self, perms: Iterator[Sequence[int]]) -> np.ndarray:
        rows = []
        for perm in perms:
            row = []
            for m in self.masks:
                img = 0
                for e in from_mask(m):
                    img |= 1 << (perm[e - 1] - 1)
                row.append(self.index[img])
            rows.append(row)
        return np.array(rows, dtype=np.int16).reshape(len(rows), len(self.masks))

    def perm_table(self) -> np.ndarray:
        """Vertex images under the symmetry group used for canonical forms:
        all of S_n for n <= 8, otherwise the permutations of the first 8
        labels (a subgroup, which keeps the search exact but less reduced)."""
        if self._perms is None:
            r = min(self.n, PERM_TABLE_MAX_N)
            tail = list(range(r + 1, self.n + 1))
            gen = (list(p) + tail for p in permutations(range(1, r + 1)))
            self._perms = self._image_table(gen)
        return self._perms

    def swap_table(self) -> np.ndarray:
        """Images under the label transpositions inside the group, a cheap
        first filter for non-canonical tuples."""
        if self._swaps is None:
            r = min(self.n, PERM_TABLE_MAX_N)
            gen = []
            for a, b in combinations(range(r), 2):
                p = list(range(1, self.n + 1))
                p[a], p[b] = p[b], p[a]
                gen.append(p)
            self._swaps = self._image_table(iter(gen))
        return self._swaps


def _lex_smaller_exists(table: np.ndarray, T: Sequence[int]) -> bool:
    """Does some row's sorted image of T come before T lexicographically?"""
    if table.shape[0] == 0:
        return False
    imgs = np.sort(table[:, list(T)], axis=1)
    t = np.asarray(T, dtype=imgs.dtype)
    diff = imgs != t
    has = diff.any(axis=1)
    if not has.any():
        return False
    first = diff.argmax(axis=1)
    rows = np.nonzero(has)[0]
    return bool((imgs[rows, first[rows]] < t[first[rows]]).any())


def _is_canonical(G: _Kneser, T: Sequence[int]) -> bool:
    """T (increasing ranks) is the least sorted tuple in its orbit."""
    if _lex_smaller_exists(G.swap_table(), T):
        return False
    return not _lex_smaller_exists(G.perm_table(), T)


# --- branch and bound ---------------------------------------------------------------

def _incumbent(n: int, k: int, m: int, objective: str) -> Family:
    """Best of the explicit construction, a union of stars and the lex
    segment at size m (whichever apply)."""
    cands = [order_segment("lex", n, k, m)]
    if k >= 1 and m:
        sp = size_parameter(n, k, m)
        if sp.lam == sp.s and sp.s <= n:
            cands.append(union_of_stars(n, k, range(1, sp.s + 1)))
        if sp.s >= 1:
            try:
                cands.append(explicit_family(ConstructionSpec(n, k, sp.s, sp.lam))[0])
            except (ValueError, RuntimeError):
                pass
    cands = [F for F in cands if len(F) == m]
    return min(cands, key=lambda F: _objective_of(F, objective))


@dataclass
class _Tree:
    G: _Kneser
    m: int
    objective: str
    bound: int
    collect_all: bool
    nodes: int = 0
    found: list = field(default_factory=list)

    def run(self) -> None:
        self._extend([], 0, [], 0)

    def _extend(self, T: list, fam_bits: int, degs: list, edges: int) -> None:
        self.nodes += 1
        if len(T) == self.m:
            obj = max(degs, default=0) if self.objective == "max_degree" else edges
            if self.collect_all:
                self.found.append(tuple(T))
            else:
                self.found.append((obj, tuple(T)))
                self.bound = obj - 1
            return
        G = self.G
        N = len(G)
        start = T[-1] + 1 if T else 0
        last_start = N - (self.m - len(T))
        for v in range(start, last_start + 1):
            nb = G.adj[v] & fam_bits
            dv = bin(nb).count("1")
            new_degs = degs + [dv]
            if self.objective == "max_degree":
                if dv > self.bound:
                    continue
                worst = dv
                for pos, u in enumerate(T):
                    if nb >> u & 1:
                        new_degs[pos] += 1
                        if new_degs[pos] > worst:
                            worst = new_degs[pos]
                if worst > self.bound:
                    continue
                new_edges = edges + dv
            else:
                new_edges = edges + dv
                if new_edges > self.bound:
                    continue
                for pos, u in enumerate(T):
                    if nb >> u & 1:
                        new_degs[pos] += 1
            T2 = T + [v]
            if not _is_canonical(G, T2):
                continue
            self._extend(T2, fam_bits | 1 << v, new_degs, new_edges)


def _bnb(n: int, k: int, m: int, objective: str) -> SearchResult:
    G = _Kneser(n, k)
    inc = _incumbent(n, k, m, objective)
    tree = _Tree(G, m, objective, _objective_of(inc, objective), False)
    tree.run()
    obj, T = tree.found[-1]
    witness = Family(n, k, (G.masks[i] for i in T))
    return SearchResult(objective, obj, witness, tree.nodes, True)


def _exhaustive(n: int, k: int, m: int, objective: str) -> SearchResult:
    G = _Kneser(n, k)
    A = G.matrix().astype(np.int32)
    best, best_T, seen = None, None, 0
    combos = combinations(range(len(G)), m)
    while True:
        chunk = list(islice(combos, 20000))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.int64).reshape(len(chunk), m)
        sub = A[idx[:, :, None], idx[:, None, :]]
        degs = sub.sum(axis=2)
        if objective == "max_degree":
            vals = degs.max(axis=1) if m else np.zeros(len(chunk), np.int64)
        else:
            vals = degs.sum(axis=1) // 2
        j = int(vals.argmin())
        if best is None or vals[j] < best:
            best, best_T = int(vals[j]), chunk[j]
        seen += len(chunk)
    witness = Family(n, k, (G.masks[i] for i in best_T))
    return SearchResult(objective, best, witness, seen, True)


def exact_minimize(n: int, k: int, m: int, objective: str = "max_degree", mode: str = "auto") -> SearchResult:
    """Minimum of ``objective`` over all m-subfamilies of K(n, k), with the
    colex-least optimal family as witness.

    ``mode`` is ``bnb`` (orderly generation with canonical-form pruning,
    C(n,k) <= 36), ``exhaustive`` (every m-subset, C(C(n,k), m) <= 10^7) or
    ``auto`` (branch and bound when allowed).
    """
    _check_objective(objective)
    N = binom(n, k)
    if not 0 <= m <= N:
        raise ValueError(f"m={m} outside [0, {N}]")
    if mode == "auto":
        mode = "bnb" if N <= BNB_MAX_VERTICES else "exhaustive"
    if mode == "bnb":
        if N > BNB_MAX_VERTICES:
            raise ValueError(f"branch and bound needs C(n,k) <= {BNB_MAX_VERTICES}, got {N}")
        result = _bnb(n, k, m, objective)
    elif mode == "exhaustive":
        if binom(N, m) > EXHAUSTIVE_MAX:
            raise ValueError(f"exhaustive search needs C(C(n,k), m) <= {EXHAUSTIVE_MAX}, got {binom(N, m)}")
        result = _exhaustive(n, k, m, objective)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if _objective_of(result.witness, objective) != result.optimum:
        raise AssertionError("witness does not achieve the reported optimum")
    return result


def all_optimal_families(n: int, k: int, m: int, objective: str = "max_degree") -> tuple[int, list[Family]]:
    """The optimum and one representative per relabelling class of optimal
    families (the canonical, colex-least member of each class)."""
    _check_objective(objective)
    N = binom(n, k)
    if N > BNB_MAX_VERTICES:
        raise ValueError(f"enumeration needs C(n,k) <= {BNB_MAX_VERTICES}, got {N}")
    if n > PERM_TABLE_MAX_N:
        raise ValueError(f"class enumeration needs the full symmetric group, n <= {PERM_TABLE_MAX_N}")
    opt = exact_minimize(n, k, m, objective).optimum
    G = _Kneser(n, k)
    tree = _Tree(G, m, objective, opt, True)
    tree.run()
    fams = [Family(n, k, (G.masks[i] for i in T)) for T in tree.found]
    return opt, fams


# --- local search ---------------------------------------------------------------------

def _start_family(n: int, k: int, m: int) -> Family:
    if m and k >= 1:
        sp = size_parameter(n, k, m)
        if sp.s >= 1 and n >= 12 * k * sp.s:
            try:
                return explicit_family(ConstructionSpec(n, k, sp.s, sp.lam))[0]
            except (ValueError, RuntimeError):
                pass
    return order_segment("lex", n, k, m)


def local_search(n: int, k: int, m: int, seed: int, iterations: int, objective: str = "max_degree") -> SearchResult:
    """Swap one member out and one non-member in, keeping moves that do not
    worsen (objective, degree sum); returns the best family seen.

    Starts from the explicit construction when it applies at size m, else
    from the lex segment. Deterministic in ``seed``.
    """
    _check_objective(objective)
    N = binom(n, k)
    if N > LOCAL_MAX_VERTICES:
        raise ValueError(f"local search needs C(n,k) <= {LOCAL_MAX_VERTICES}, got {N}")
    if n > 64:
        raise ValueError("local search needs n <= 64")
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    start = _start_family(n, k, m)
    members = np.array(start.masks, dtype=np.uint64)
    outside = np.array(sorted(set(iter_colex(n, k)) - set(start.masks)), dtype=np.uint64)
    degs = ((members[:, None] & members[None, :]) == 0).sum(axis=1).astype(np.int64)

    def key(d: np.ndarray) -> tuple[int, int]:
        total = int(d.sum())
        if objective == "max_degree":
            return (int(d.max(initial=0)), total)
        return (total // 2, 0)

    cur = key(degs)
    best, best_members = cur, members.copy()
    rng = np.random.Generator(np.random.PCG64(seed))
    if m == 0 or len(outside) == 0:
        iterations = 0
    for _ in range(iterations):
        i = int(rng.integers(len(members)))
        j = int(rng.integers(len(outside)))
        u, v = members[i], outside[j]
        trial = degs.copy()
        trial -= (members & u) == 0
        trial[i] = 0
        hit = (members & v) == 0
        hit[i] = False
        trial += hit
        trial[i] = int(hit.sum())
        new = key(trial)
        if new <= cur:
            members[i], outside[j] = v, u
            degs, cur = trial, new
            if new < best:
                best, best_members = new, members.copy()
    witness = Family(n, k, (int(x) for x in best_members))
    optimum = best[0]
    if _objective_of(witness, objective) != optimum:
        raise AssertionError("local search bookkeeping drifted")
    return SearchResult(objective, optimum, witness, iterations, False)


# --- matchings ----------------------------------------------------------------------

def greedy_matching(F: Family) -> MatchingResult:
    """Repeatedly take a maximum-degree member (lowest colex rank on ties)
    and continue inside its neighbourhood."""
    if not len(F):
        raise ValueError("greedy matching needs a nonempty family")
    current = list(F.masks)
    chosen = []
    while current:
        sub = Family(F.n, F.k, current)
        degs = degree_profile(sub).degrees
        top = max(degs)
        v = current[degs.index(top)]
        chosen.append(v)
        current = [w for w in current if not w & v]
    members = tuple(from_mask(v) for v in chosen)
    return MatchingResult(members, len(members))


def max_matching_size(F: Family) -> int:
    """Largest number of pairwise disjoint members, by brute force."""
    masks = list(F.masks)
    best = 0

    def grow(start: int, used: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if size + len(masks) - start <= best:
            return
        for i in range(start, len(masks)):
            if not masks[i] & used:
                grow(i + 1, used | masks[i], size + 1)

    grow(0, 0, 0)
    return best


# --- conjecture reports --------------------------------------------------------------

def _star_shape(F: Family, S: Sequence[int]) -> dict:
    """Properties (i)-(iii) of the sparse-minimizer shape for a label set S."""
    n, k = F.n, F.k
    sm = to_mask(S)
    members = set(F.masks)
    contained = all(a & sm for a in F.masks)
    pairwise = all(
        b in members
        for i, j in combinations(S, 2)
        for b in iter_colex(n, k)
        if b >> (i - 1) & 1 and b >> (j - 1) & 1
    )
    slices = []
    for i in S:
        bit = 1 << (i - 1)
        slices.append({a & ~sm for a in F.masks if a & sm == bit})
    balanced = all(len(x ^ y) <= 1 for x, y in combinations(slices, 2))
    return {"contained": contained, "pairwise": pairwise, "balanced": balanced}


def _is_union_of_stars(F: Family, s: int) -> bool:
    for S in combinations(range(1, F.n + 1), s):
        if union_of_stars(F.n, F.k, S) == F:
            return True
    return False


def conjecture_reports(n: int, k: int, m: int) -> dict:
    """Finite evidence on the sparse- and dense-minimizer conjectures for the
    max-degree objective at (n, k, m). Verdicts are "consistent",
    "counterexample found" or "instance outside conjecture hypotheses"."""
    if k < 1:
        raise ValueError("conjecture reports need k >= 1")
    opt, fams = all_optimal_families(n, k, m, "max_degree")
    sp = size_parameter(n, k, m)
    s = sp.s
    shapes = []
    for F in fams:
        best = None
        for S in combinations(range(1, n + 1), min(s + 1, n)):
            sh = _star_shape(F, S)
            if all(sh.values()):
                best = {"S": list(S), **sh}
                break
        shapes.append(best)
    sparse_ok = any(x is not None for x in shapes)
    partial = {
        name: any(
            _star_shape(F, S)[name] for F in fams for S in combinations(range(1, n + 1), min(s + 1, n))
        )
        for name in ("contained", "pairwise", "balanced")
    }
    report = {
        "n": n,
        "k": k,
        "m": m,
        "s": s,
        "lambda": str(sp.lam),
        "optimum": opt,
        "optimal_classes": len(fams),
        "minimizers": [[list(x) for x in F.sets()] for F in fams],
        "sparse": {
            "hypothesis": SPARSE_CAVEAT,
            "hypothesis_checked": False,
            "some_minimizer_has_all_three": sparse_ok,
            "some_minimizer_has": partial,
            "witness_stars": next((x["S"] for x in shapes if x is not None), None),
            "verdict": "consistent" if sparse_ok else "counterexample found",
        },
    }
    if sp.lam == s and s >= 1:
        every = all(_is_union_of_stars(F, s) for F in fams)
        report["equality_case"] = {
            "hypothesis": EQUALITY_CAVEAT,
            "hypothesis_ok": n >= 10000 * s**5 * k,
            "every_minimizer_is_union_of_s_stars": every,
            "verdict": "consistent" if every else "counterexample found",
        }
    total = binom(n, k)
    if 2 * m < total:
        report["dense"] = {"verdict": "instance outside conjecture hypotheses"}
    else:
        t = k
        while binom(t, k) < m:
            t += 1
        fits = [len({e for a in F.masks for e in from_mask(a)}) <= t for F in fams]
        dense = {
            "t": t,
            "some_minimizer_inside_t_labels": any(fits),
            "verdict": "consistent" if any(fits) else "counterexample found",
        }
        if binom(t, k) == m:
            colex = order_segment("colex", n, k, m)
            dense["colex_segment_max_degree"] = _objective_of(colex, "max_degree")
            dense["colex_segment_optimal"] = dense["colex_segment_max_degree"] == opt
        report["dense"] = dense
    return report
