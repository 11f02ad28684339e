"""Independent verification oracles.

``oracle_mbsn0`` computes the exact bottleneck of the best 2-connected
spanning subgraph of the complete graph (threshold search over the sorted
pairwise distances).  ``oracle_k1`` and ``oracle_k2`` minimise that value
over Steiner locations by certified branch-and-bound on a grid of square
cells.  A cell is discarded only with a proof that nothing inside it beats
the incumbent by more than the target error; the proofs combine

  * the Lipschitz property of the objective (an edge moves at most as far
    as its endpoint; 2-Lipschitz for simultaneous moves of a pair),
  * per-vertex degree bounds over the whole cell (every vertex of a
    2-connected network needs a second incident edge),
  * connectivity bounds from deleting one vertex: removing a Steiner
    point must leave the rest connected, so the terminals (plus the other
    Steiner point) must connect on their own; likewise for removing any
    single terminal.

On return the true optimum lies in [bottleneck - error_bound, bottleneck].
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left
from typing import Sequence

import numpy as np

from .geom import Point2

SQRT2 = math.sqrt(2.0)


def _is_biconnected_adj(adj: list[int], n: int) -> bool:
    """Articulation-free connectivity over bitmask adjacency; K1 and K2
    count as 2-connected."""
    if n <= 1:
        return True
    if n == 2:
        return bool(adj[0] & 2)
    disc = [-1] * n
    low = [0] * n
    disc[0] = low[0] = 0
    timer = 1
    root_children = 0
    stack: list[list[int]] = [[0, adj[0]]]
    while stack:
        top = stack[-1]
        v, rem = top
        if rem:
            b = rem & (-rem)
            top[1] = rem ^ b
            w = b.bit_length() - 1
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if v == 0:
                    root_children += 1
                stack.append([w, adj[w] & ~(1 << v)])
            elif disc[w] < low[v]:
                low[v] = disc[w]
        else:
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if u != 0 and low[v] >= disc[u]:
                    return False
    if root_children >= 2:
        return False
    return timer == n


class BottleneckEvaluator:
    """Bottleneck 2-connectivity threshold for a fixed terminal set plus a
    variable tuple of extra points."""

    def __init__(self, points: Sequence[Point2]):
        self.base = [p.as_tuple() for p in points]
        self.nb = len(self.base)
        self.base_rows = [[math.dist(p, q) for q in self.base] for p in self.base]

    def value(self, extras: Sequence[tuple[float, float]]) -> float:
        pts = self.base + list(extras)
        n = len(pts)
        d = [row[:] for row in self.base_rows]
        for row, p in zip(d, self.base):
            for q in extras:
                row.append(math.dist(p, q))
        for i in range(self.nb, n):
            d.append([math.dist(pts[i], q) for q in pts])
        if n == 1:
            return 0.0
        ts = sorted({d[i][j] for i in range(n) for j in range(i + 1, n)})
        # every vertex needs two incident edges, a hard lower bound
        lb = 0.0
        for i in range(n):
            vals = sorted(d[i][j] for j in range(n) if j != i)
            need = vals[1] if n >= 3 else vals[0]
            if need > lb:
                lb = need
        lo = bisect_left(ts, lb)
        hi = len(ts) - 1
        best = ts[hi]
        while lo <= hi:
            mid = (lo + hi) // 2
            t = ts[mid]
            adj = [0] * n
            for i in range(n):
                di = d[i]
                m = 0
                for j in range(n):
                    if j != i and di[j] <= t:
                        m |= 1 << j
                adj[i] = m
            if _is_biconnected_adj(adj, n):
                best = t
                hi = mid - 1
            else:
                lo = mid + 1
        return best


def oracle_mbsn0(points: Sequence[Point2]) -> float:
    """Exact: least t at which the complete threshold graph is 2-connected."""
    if len(points) < 2:
        raise ValueError("need at least 2 points")
    return BottleneckEvaluator(points).value(())


def search_domain(points: Sequence[Point2]) -> tuple[float, float, float]:
    """Square centred on the instance, inflated by one diameter per side;
    a Steiner point outside it is never useful."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    diam = max(math.dist(p.as_tuple(), q.as_tuple())
               for p in points for q in points)
    diam = max(diam, 1e-9)
    side = max(max(xs) - min(xs), max(ys) - min(ys)) + 2.0 * diam
    return ((max(xs) + min(xs)) / 2.0, (max(ys) + min(ys)) / 2.0, side / 2.0)


def domain_contains(points: Sequence[Point2], s: Point2) -> bool:
    cx, cy, half = search_domain(points)
    return abs(s.x - cx) <= half and abs(s.y - cy) <= half


class _Dendrogram:
    """Single-linkage structure of a point subset: merge thresholds and the
    components alive between consecutive thresholds."""

    def __init__(self, coords: np.ndarray, members: np.ndarray):
        self.members = members
        m = len(members)
        if m == 0:
            self.levels: list[tuple[float, list[np.ndarray]]] = [(0.0, [])]
            self.t_conn = 0.0
            return
        sub = coords[members]
        d = np.hypot(sub[:, None, 0] - sub[None, :, 0],
                     sub[:, None, 1] - sub[None, :, 1])
        in_tree = [0]
        best = d[0].copy()
        mst_edges = []
        for _ in range(m - 1):
            best[in_tree] = np.inf
            j = int(np.argmin(best))
            mst_edges.append(float(best[j]))
            in_tree.append(j)
            best = np.minimum(best, d[j])
        mst_edges.sort()
        self.t_conn = mst_edges[-1] if mst_edges else 0.0
        # replay merges to list components per level
        parent = list(range(m))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        full = np.hypot(sub[:, None, 0] - sub[None, :, 0],
                        sub[:, None, 1] - sub[None, :, 1])
        order = np.argsort(full, axis=None)
        levels: list[tuple[float, list[np.ndarray]]] = []

        def snapshot(t: float) -> None:
            comps: dict[int, list[int]] = {}
            for i in range(m):
                comps.setdefault(find(i), []).append(i)
            levels.append((t, [np.array(c) for c in comps.values()]))

        snapshot(0.0)
        for flat in order:
            i, j = divmod(int(flat), m)
            if i >= j:
                continue
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                snapshot(float(full[i, j]))
        self.levels = levels


class _CellBounds:
    """Vectorised, certified lower bounds on the objective over square cells."""

    def __init__(self, points: Sequence[Point2], k: int):
        self.k = k
        self.xy = np.array([p.as_tuple() for p in points])
        n = self.xy.shape[0]
        self.n = n
        d = np.hypot(self.xy[:, None, 0] - self.xy[None, :, 0],
                     self.xy[:, None, 1] - self.xy[None, :, 1])
        np.fill_diagonal(d, np.inf)
        srt = np.sort(d, axis=1)
        self.st1 = srt[:, 0]
        self.st2 = srt[:, 1] if n >= 3 else np.full(n, np.inf)
        allv = np.arange(n)
        self.full_dendro = _Dendrogram(self.xy, allv)
        self.drop_dendros = [_Dendrogram(self.xy, allv[allv != v]) for v in range(n)]

    def _boxdist(self, centers: np.ndarray, half: float) -> np.ndarray:
        """(m, n): least distance from anywhere in each cell box to each point."""
        dx = np.maximum(np.abs(centers[:, None, 0] - self.xy[None, :, 0]) - half, 0.0)
        dy = np.maximum(np.abs(centers[:, None, 1] - self.xy[None, :, 1]) - half, 0.0)
        return np.hypot(dx, dy)

    @staticmethod
    def _second_with_one(s1, s2, x):
        return np.minimum(s2, np.maximum(s1, x))

    @staticmethod
    def _second_with_two(s1, s2, x, y):
        lo = np.minimum(x, y)
        hi = np.maximum(x, y)
        return np.minimum(np.minimum(s2, hi), np.maximum(s1, lo))

    @staticmethod
    def _hub1(dendro: _Dendrogram, box: np.ndarray) -> np.ndarray:
        """Connectivity threshold lower bound with one free connector: the
        subset's components must all reach the box."""
        out = None
        for t, comps in dendro.levels:
            r = None
            for comp in comps:
                cmin = box[:, comp].min(axis=1)
                r = cmin if r is None else np.maximum(r, cmin)
            m = np.maximum(t, r) if r is not None else np.full(box.shape[0], t)
            out = m if out is None else np.minimum(out, m)
        return out

    @staticmethod
    def _hub2(dendro: _Dendrogram, box1: np.ndarray, box2: np.ndarray,
              d12: np.ndarray) -> np.ndarray:
        """Connectivity threshold lower bound with two free connectors."""
        out = None
        for t, comps in dendro.levels:
            attach = None
            through = None
            for comp in comps:
                a = box1[:, comp].min(axis=1)
                b = box2[:, comp].min(axis=1)
                near = np.minimum(a, b)
                far = np.maximum(a, b)
                attach = near if attach is None else np.maximum(attach, near)
                through = far if through is None else np.minimum(through, far)
            if attach is None:
                m = np.full(box1.shape[0], t)
            else:
                bridge = np.minimum(d12, through)
                m = np.maximum(t, np.maximum(attach, bridge))
            out = m if out is None else np.minimum(out, m)
        return out

    def lower_bound(self, centers: np.ndarray, half: float) -> np.ndarray:
        """Proven lower bound on the objective anywhere inside each cell."""
        box1 = self._boxdist(centers[:, 0:2], half)
        if self.k == 1:
            per_base = self._second_with_one(self.st1[None, :], self.st2[None, :], box1)
            bound = per_base.max(axis=1)
            s_need = np.partition(box1, 1, axis=1)[:, 1] if self.n >= 2 else box1[:, 0]
            bound = np.maximum(bound, s_need)
            bound = np.maximum(bound, self.full_dendro.t_conn)
            for dd in self.drop_dendros:
                bound = np.maximum(bound, self._hub1(dd, box1[:, dd.members]))
            return bound
        box2 = self._boxdist(centers[:, 2:4], half)
        dx = np.maximum(np.abs(centers[:, 0] - centers[:, 2]) - 2 * half, 0.0)
        dy = np.maximum(np.abs(centers[:, 1] - centers[:, 3]) - 2 * half, 0.0)
        d12 = np.hypot(dx, dy)
        per_base = self._second_with_two(self.st1[None, :], self.st2[None, :], box1, box2)
        bound = per_base.max(axis=1)
        s1_need = np.partition(np.concatenate([box1, d12[:, None]], axis=1), 1, axis=1)[:, 1]
        s2_need = np.partition(np.concatenate([box2, d12[:, None]], axis=1), 1, axis=1)[:, 1]
        bound = np.maximum(bound, np.maximum(s1_need, s2_need))
        # deleting one Steiner point leaves the terminals plus the other one
        bound = np.maximum(bound, self._hub1(self.full_dendro, box1))
        bound = np.maximum(bound, self._hub1(self.full_dendro, box2))
        for dd in self.drop_dendros:
            sub1 = box1[:, dd.members]
            sub2 = box2[:, dd.members]
            bound = np.maximum(bound, self._hub2(dd, sub1, sub2, d12))
        return bound


def _certified_min(points: Sequence[Point2], k: int, target: float):
    """Branch-and-bound: returns (incumbent value, incumbent centres)."""
    ev = BottleneckEvaluator(points)
    bounds = _CellBounds(points, k)
    cx, cy, half_dom = search_domain(points)
    lip = 1.0 if k == 1 else 2.0

    incumbent = math.inf
    inc_loc: tuple[tuple[float, float], ...] | None = None

    def exact(flat: Sequence[float]) -> float:
        nonlocal incumbent, inc_loc
        pts = tuple((flat[2 * i], flat[2 * i + 1]) for i in range(k))
        v = ev.value(pts)
        if v < incumbent:
            incumbent = v
            inc_loc = pts
        return v

    warm2d = [p.as_tuple() for p in points]
    for p, q in itertools.combinations(points, 2):
        warm2d.append(((p.x + q.x) / 2.0, (p.y + q.y) / 2.0))
    warm2d = warm2d[:64]
    if k == 1:
        for w in warm2d:
            exact(w)
    else:
        for a, b in itertools.combinations_with_replacement(warm2d, 2):
            exact((a[0], a[1], b[0], b[1]))

    kgrid = 16 if k == 1 else 6
    step = 2.0 * half_dom / kgrid
    axis = [cx - half_dom + (i + 0.5) * step for i in range(kgrid)]
    ays = [cy - half_dom + (i + 0.5) * step for i in range(kgrid)]
    grid2d = [(x, y) for x in axis for y in ays]
    if k == 1:
        centers = np.array(grid2d)
    else:
        centers = np.array([(a[0], a[1], b[0], b[1])
                            for i, a in enumerate(grid2d)
                            for b in grid2d[i:]])
    half = step / 2.0

    for _level in range(64):
        if centers.shape[0] == 0:
            break
        cutoff = incumbent - target
        keep = bounds.lower_bound(centers, half) < cutoff
        cand = centers[keep]
        if cand.shape[0] == 0:
            break
        slack = lip * SQRT2 * half
        vals = np.empty(cand.shape[0])
        for i, flat in enumerate(cand):
            vals[i] = exact(flat)
        keep2 = vals - slack < incumbent - target
        survivors = cand[keep2]
        if survivors.shape[0] == 0:
            break
        offs = np.array(list(itertools.product((-half / 2.0, half / 2.0), repeat=2 * k)))
        centers = (survivors[:, None, :] + offs[None, :, :]).reshape(-1, 2 * k)
        half /= 2.0
        if centers.shape[0] > 600_000:
            raise RuntimeError("oracle refinement exploded; loosen target_error")
    assert inc_loc is not None
    return incumbent, inc_loc


def oracle_k1(points: Sequence[Point2], target_error: float) -> tuple[float, Point2, float]:
    if len(points) < 2:
        raise ValueError("need at least 2 points")
    if target_error <= 0:
        raise ValueError("target_error must be positive")
    val, loc = _certified_min(points, 1, target_error)
    return val, Point2(*loc[0]), target_error


def oracle_k2(points: Sequence[Point2], target_error: float) -> tuple[float, Point2, Point2, float]:
    if len(points) < 2:
        raise ValueError("need at least 2 points")
    if target_error <= 0:
        raise ValueError("target_error must be positive")
    val, loc = _certified_min(points, 2, target_error)
    return val, Point2(*loc[0]), Point2(*loc[1]), target_error
