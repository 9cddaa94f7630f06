"""Random-graph families used as structured baselines.

Four families:

* ``er``   -- every unordered pair is an edge independently with prob p.
* ``rgg``  -- n uniform points in the unit hypercube; pairs ranked by
  inverse Euclidean distance; the top m = round(d * n(n-1)/2) become edges.
* ``rhgg`` -- as rgg but pair weight is (s_i + s_j) / dist with lognormal
  node strengths, mixing geometry with a degree hierarchy.
* ``rhg``  -- degree-preserving randomisation of an rhgg sample
  (configuration model: stub pairing repaired into a simple graph).

All generators are deterministic in (parameters, seed) down to the byte
level of the edge set.  Weight ties in the geometric selectors break
lexicographically by node pair.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graph import Graph, from_unique_pairs

__all__ = [
    "ModelSpec",
    "gen_er",
    "gen_rgg",
    "gen_rhgg",
    "gen_config",
    "generate",
]

_FAMILIES = ("er", "rgg", "rhgg", "rhg")


@dataclass(frozen=True)
class ModelSpec:
    """Parameters that fully determine one random graph draw (with seed).

    ``target`` is the edge probability for er and the target density for
    the geometric families.  ``degree_sequence`` feeds rhg directly; when
    absent, rhg derives its sequence from a fresh rhgg sample.
    """

    family: str
    n: int
    target: float = 0.0
    dims: int = 3
    lognormal_mu: float = 0.0
    lognormal_sigma: float = 0.2
    seed: int = 0
    degree_sequence: tuple[int, ...] | None = None

    def validate(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= self.target <= 1.0:
            raise ValueError("target probability/density must lie in [0, 1]")
        if self.dims < 1:
            raise ValueError("dims must be positive")
        if self.lognormal_sigma < 0:
            raise ValueError("lognormal_sigma must be non-negative")


def child_seed(seed: int, *path: int) -> int:
    """Deterministic per-index stream seed, safe to fan out across workers."""
    ss = np.random.SeedSequence((int(seed),) + tuple(int(x) for x in path))
    return int(ss.generate_state(1, np.uint64)[0])


def gen_er(n: int, p: float, seed: int) -> Graph:
    """Independent-pairs random graph on n nodes with edge probability p."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    los: list[np.ndarray] = []
    his: list[np.ndarray] = []
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - 1 - i) < p)
        if hits.size:
            los.append(np.full(hits.size, i, dtype=np.int64))
            his.append(hits.astype(np.int64) + i + 1)
    lo = np.concatenate(los) if los else np.empty(0, dtype=np.int64)
    hi = np.concatenate(his) if his else np.empty(0, dtype=np.int64)
    return from_unique_pairs(n, lo, hi)


def _distinct_points(n: int, dims: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points with exact duplicates resampled (keeps 1/dist finite).

    Within a duplicate group the lowest node id keeps its point.
    """
    pts = rng.random((n, dims))
    while True:
        _, inverse, counts = np.unique(pts, axis=0, return_inverse=True, return_counts=True)
        if (counts == 1).all():
            return pts
        redo: list[np.ndarray] = []
        for group in np.flatnonzero(counts > 1):
            members = np.flatnonzero(inverse == group)
            redo.append(members[1:])
        bad = np.sort(np.concatenate(redo))
        pts[bad] = rng.random((bad.size, dims))


def _keep_top(w: np.ndarray, c: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Top-m entries of w, ties at the cut resolved by ascending pair code."""
    if w.size <= m:
        return w, c
    part = np.partition(w, w.size - m)
    thresh = part[w.size - m]
    sel = np.flatnonzero(w > thresh)
    need = m - sel.size
    if need > 0:
        ties = np.flatnonzero(w == thresh)
        ties = ties[np.argsort(c[ties], kind="stable")[:need]]
        sel = np.concatenate((sel, ties))
    return w[sel], c[sel]


def _geometric_top_m(pts: np.ndarray, m: int, strengths: np.ndarray | None) -> Graph:
    """Rank all pairs by inverse-distance weight and keep the heaviest m.

    Streams row blocks so only O(m + block) weights are live at once.
    """
    n = pts.shape[0]
    if m == 0:
        return from_unique_pairs(n, np.empty(0, np.int64), np.empty(0, np.int64))
    best_w = np.empty(0, dtype=np.float64)
    best_c = np.empty(0, dtype=np.int64)
    block = max(1, 2_000_000 // max(n, 1))
    for i0 in range(0, n - 1, block):
        i1 = min(i0 + block, n - 1)
        diff = pts[i0:i1, None, :] - pts[None, :, :]
        d2 = np.einsum("rjq,rjq->rj", diff, diff)
        rows, cols = np.nonzero(np.arange(n)[None, :] > (i0 + np.arange(i1 - i0))[:, None])
        ii = rows + i0
        jj = cols
        inv = 1.0 / np.sqrt(d2[rows, cols])
        w = inv if strengths is None else inv * (strengths[ii] + strengths[jj])
        c = ii * np.int64(n) + jj
        best_w, best_c = _keep_top(np.concatenate((best_w, w)), np.concatenate((best_c, c)), m)
    order = np.argsort(best_c, kind="stable")
    codes = best_c[order]
    return from_unique_pairs(n, codes // n, codes % n)


def _pair_target(n: int, density: float) -> int:
    return int(round(density * n * (n - 1) / 2))


def gen_rgg(n: int, density: float, seed: int, dims: int = 3) -> Graph:
    """Geometric graph: the m closest pairs of n uniform points are edges."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pts = _distinct_points(n, dims, rng)
    return _geometric_top_m(pts, _pair_target(n, density), None)


def gen_rhgg(
    n: int,
    density: float,
    seed: int,
    dims: int = 3,
    lognormal_mu: float = 0.0,
    lognormal_sigma: float = 0.2,
) -> Graph:
    """Geometric graph with lognormal strengths: weight (s_i + s_j) / dist.

    Coordinates are drawn before strengths, so at sigma=0 the edge set
    coincides with :func:`gen_rgg` for the same seed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    if lognormal_sigma < 0:
        raise ValueError("lognormal_sigma must be non-negative")
    rng = np.random.default_rng(seed)
    pts = _distinct_points(n, dims, rng)
    if lognormal_sigma == 0.0:
        s = np.full(n, float(np.exp(lognormal_mu)))
    else:
        s = rng.lognormal(lognormal_mu, lognormal_sigma, n)
    return _geometric_top_m(pts, _pair_target(n, density), s)


def gen_config(degree_sequence, seed: int) -> Graph:
    """Uniform-ish simple graph with exactly the given degree sequence.

    Stubs are shuffled and paired; self-loops and duplicate edges are then
    repaired with random double-edge swaps (cap: 100 * m attempts).  Dense
    sequences (density > 1/2) are paired in the complement and inverted,
    which keeps the repair tractable without touching the degree contract.
    """
    deg = np.asarray(list(degree_sequence), dtype=np.int64)
    n = deg.size
    if n < 1:
        raise ValueError("degree sequence must be non-empty")
    if deg.min() < 0:
        raise ValueError("degrees must be non-negative")
    if int(deg.sum()) % 2 != 0:
        raise ValueError("degree sum must be even")
    if deg.max() >= n:
        raise ValueError("max degree must be below n")
    rng = np.random.default_rng(seed)
    if n >= 2 and int(deg.sum()) > n * (n - 1) // 2:
        comp = _pair_and_repair(n - 1 - deg, rng)
        present = np.zeros((n, n), dtype=bool)
        if comp:
            cu = np.fromiter((e[0] for e in comp), dtype=np.int64, count=len(comp))
            cv = np.fromiter((e[1] for e in comp), dtype=np.int64, count=len(comp))
            present[cu, cv] = True
            present[cv, cu] = True
        np.fill_diagonal(present, True)
        lo, hi = np.nonzero(np.triu(~present, k=1))
        return from_unique_pairs(n, lo.astype(np.int64), hi.astype(np.int64))
    edges = _pair_and_repair(deg, rng)
    if not edges:
        return from_unique_pairs(n, np.empty(0, np.int64), np.empty(0, np.int64))
    arr = np.sort(np.asarray(edges, dtype=np.int64), axis=1)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    arr = arr[order]
    return from_unique_pairs(n, arr[:, 0], arr[:, 1])


def _pair_and_repair(deg: np.ndarray, rng: np.random.Generator) -> list[tuple[int, int]]:
    stubs = np.repeat(np.arange(deg.size, dtype=np.int64), deg)
    rng.shuffle(stubs)
    half = stubs.reshape(-1, 2)
    edges: list[tuple[int, int]] = [
        (int(a), int(b)) if a <= b else (int(b), int(a)) for a, b in half
    ]
    m = len(edges)
    if m == 0:
        return edges
    count: Counter[tuple[int, int]] = Counter(edges)

    def is_bad(pair: tuple[int, int]) -> bool:
        return pair[0] == pair[1] or count[pair] > 1

    max_attempts = 100 * m
    attempts = 0
    while True:
        bad = [idx for idx, pair in enumerate(edges) if is_bad(pair)]
        if not bad:
            return edges
        for idx in bad:
            if not is_bad(edges[idx]):
                continue
            while True:
                if attempts >= max_attempts:
                    raise ValueError("non-graphical or repair exhausted")
                attempts += 1
                j = int(rng.integers(m))
                if j == idx:
                    continue
                a, b = edges[idx]
                c, d = edges[j]
                if rng.random() < 0.5:
                    c, d = d, c
                if a == c or b == d:
                    continue
                q1 = (a, c) if a < c else (c, a)
                q2 = (b, d) if b < d else (d, b)
                if q1 == q2 or count[q1] >= 1 or count[q2] >= 1:
                    continue
                count[edges[idx]] -= 1
                count[edges[j]] -= 1
                count[q1] += 1
                count[q2] += 1
                edges[idx] = q1
                edges[j] = q2
                break


def generate(spec: ModelSpec) -> Graph:
    """Draw one graph according to a :class:`ModelSpec`."""
    spec.validate()
    if spec.family == "er":
        return gen_er(spec.n, spec.target, spec.seed)
    if spec.family == "rgg":
        return gen_rgg(spec.n, spec.target, spec.seed, dims=spec.dims)
    if spec.family == "rhgg":
        return gen_rhgg(
            spec.n, spec.target, spec.seed,
            dims=spec.dims,
            lognormal_mu=spec.lognormal_mu,
            lognormal_sigma=spec.lognormal_sigma,
        )
    if spec.degree_sequence is not None:
        return gen_config(spec.degree_sequence, spec.seed)
    base = gen_rhgg(
        spec.n, spec.target, child_seed(spec.seed, 0),
        dims=spec.dims,
        lognormal_mu=spec.lognormal_mu,
        lognormal_sigma=spec.lognormal_sigma,
    )
    return gen_config(base.degrees, child_seed(spec.seed, 1))
