"""Top-level solvers: minimum bottleneck 2-connected networks with
k = 0, 1 or 2 Steiner points.

All three run a binary search with incumbent tracking over the ordered
edge lengths of the 2-relative neighbourhood graph.  A threshold is
infeasible when the leaf/isolated-block counter exceeds 5k (plus, for
k = 1, when the threshold graph is disconnected); otherwise the optimal
k-block closure of the threshold graph prices it at max(closure radius,
threshold).  The k = 2 schedule is prepended with 0 because an optimal
network minus its Steiner points may be edgeless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .closure1 import OneBlockClosure, optimal_1block_closure
from .closure2 import EmbeddedClosure, optimal_2block_closure, separate_coincident
from .geom import Point2, distance, geometry_eps
from .graph import Graph, b_count, is_biconnected, is_connected, make_graph
from .rng import build_2rng, length_schedule, threshold_subgraph
from .scsd import ScsdContext


@dataclass(frozen=True)
class SolutionNetwork:
    """A 2-connected network spanning the terminals plus k Steiner points.

    Edge indices 0..n-1 are terminals in input order, n..n+k-1 the Steiner
    points; the threshold is the winning schedule value."""

    terminals: tuple[Point2, ...]
    steiner: tuple[Point2, ...]
    edges: tuple[tuple[int, int], ...]
    k: int
    threshold: float
    bottleneck: float

    def all_points(self) -> tuple[Point2, ...]:
        return self.terminals + self.steiner

    def recomputed_bottleneck(self) -> float:
        pts = self.all_points()
        return max(distance(pts[u], pts[v]) for u, v in self.edges)

    def as_graph(self) -> Graph:
        pts = self.all_points()
        return make_graph(len(pts), self.edges,
                          [distance(pts[u], pts[v]) for u, v in self.edges])

    def validate(self) -> None:
        """Raise ValueError on any violated structural invariant."""
        if len(self.steiner) != self.k:
            raise ValueError("wrong number of Steiner points")
        pts = self.all_points()
        if len({p.as_tuple() for p in pts}) != len(pts):
            raise ValueError("Steiner points must be distinct from all other points")
        if not is_biconnected(self.as_graph()):
            raise ValueError("network is not 2-connected")
        eps = max(geometry_eps(pts), 1e-12)
        if abs(self.recomputed_bottleneck() - self.bottleneck) > eps:
            raise ValueError("recorded bottleneck disagrees with the edge list")


@dataclass(frozen=True)
class ThresholdEval:
    threshold: float
    feasible: bool
    radius: float | None
    objective: float | None


def _check_input(points: Sequence[Point2]) -> tuple[Point2, ...]:
    pts = tuple(points)
    if len(pts) < 2:
        raise ValueError("need at least 2 points")
    if len({p.as_tuple() for p in pts}) != len(pts):
        raise ValueError("duplicate points")
    return pts


def _binary_search(lengths: Sequence[float],
                   evaluate: Callable[[float], tuple[bool, float, object]]):
    """Classical lo/hi index search recording the best feasible objective.

    Infeasibility is monotone below (the block counter only grows on edge
    subgraphs) and the closure radius is monotone above, so each discarded
    half is dominated by the probed value."""
    lo, hi = 0, len(lengths) - 1
    best = None  # (objective, threshold, payload)
    while lo <= hi:
        mid = (lo + hi) // 2
        t = lengths[mid]
        feasible, radius, payload = evaluate(t)
        if not feasible:
            lo = mid + 1
            continue
        obj = max(radius, t)
        if best is None or obj < best[0]:
            best = (obj, t, payload)
        if radius <= t:
            hi = mid - 1
        else:
            lo = mid + 1
    assert best is not None, "no feasible threshold (the full 2-RNG is always feasible)"
    return best


def mbsn0(points: Sequence[Point2]) -> SolutionNetwork:
    """Minimum bottleneck 2-connected spanning network (no Steiner points):
    the least threshold at which the 2-RNG threshold subgraph is 2-connected."""
    pts = _check_input(points)
    r = build_2rng(pts)
    sched = length_schedule(r)
    lo, hi = 0, len(sched.lengths) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        g = threshold_subgraph(r, sched.lengths[mid])
        if is_biconnected(g):
            best = (sched.lengths[mid], g)
            hi = mid - 1
        else:
            lo = mid + 1
    assert best is not None, "full 2-RNG must be 2-connected"
    t, g = best
    return SolutionNetwork(pts, (), g.edges, 0, t, t)


def _eval_k1(r: Graph, pts: tuple[Point2, ...], ctx: ScsdContext):
    def evaluate(t: float):
        g = threshold_subgraph(r, t)
        if not is_connected(g) or b_count(g) > 5:
            return False, math.inf, None
        clo = optimal_1block_closure(g, pts, ctx)
        return True, clo.radius, clo

    return evaluate


def mbsn1(points: Sequence[Point2]) -> SolutionNetwork:
    pts = _check_input(points)
    r = build_2rng(pts)
    ctx = ScsdContext(pts)
    sched = length_schedule(r)
    obj, t_star, clo = _binary_search(sched.lengths, _eval_k1(r, pts, ctx))
    assert isinstance(clo, OneBlockClosure)
    s_star = separate_coincident(pts, [clo.steiner],
                                 [[pts[v] for v in clo.steiner_edges]], [])[0]
    final = mbsn0(list(pts) + [s_star])
    return SolutionNetwork(pts, (s_star,), final.edges, 1, t_star,
                           final.bottleneck)


def _eval_k2(r: Graph, pts: tuple[Point2, ...], ctx: ScsdContext):
    def evaluate(t: float):
        g = threshold_subgraph(r, t)
        if b_count(g) > 10:
            return False, math.inf, None
        emb = optimal_2block_closure(g, pts, ctx)
        return True, emb.radius, (g, emb)

    return evaluate


def _assemble_k2(pts: tuple[Point2, ...], g: Graph, emb: EmbeddedClosure,
                 t_star: float) -> SolutionNetwork:
    n = len(pts)
    idx = {"s1": n, "s2": n + 1}
    edges = list(g.edges)
    for a, b in emb.steiner_edges:
        u = idx[a]
        v = idx[b] if isinstance(b, str) else b
        edges.append((u, v) if u < v else (v, u))
    net = SolutionNetwork(pts, (emb.s1, emb.s2), tuple(sorted(set(edges))),
                          2, t_star, 0.0)
    return SolutionNetwork(pts, net.steiner, net.edges, 2, t_star,
                           net.recomputed_bottleneck())


def mbsn2(points: Sequence[Point2]) -> SolutionNetwork:
    pts = _check_input(points)
    r = build_2rng(pts)
    ctx = ScsdContext(pts)
    sched = length_schedule(r, include_zero=True)
    obj, t_star, payload = _binary_search(sched.lengths, _eval_k2(r, pts, ctx))
    g, emb = payload
    return _assemble_k2(pts, g, emb, t_star)


def threshold_scan(points: Sequence[Point2], k: int) -> list[ThresholdEval]:
    """Exhaustive per-threshold evaluation over the whole schedule; used to
    verify that the binary search returns the same objective."""
    pts = _check_input(points)
    r = build_2rng(pts)
    ctx = ScsdContext(pts)
    if k == 1:
        sched = length_schedule(r)
        evaluate = _eval_k1(r, pts, ctx)
    elif k == 2:
        sched = length_schedule(r, include_zero=True)
        evaluate = _eval_k2(r, pts, ctx)
    else:
        raise ValueError("threshold_scan supports k in {1, 2}")
    out = []
    for t in sched.lengths:
        feasible, radius, _ = evaluate(t)
        out.append(ThresholdEval(t, feasible, radius if feasible else None,
                                 max(radius, t) if feasible else None))
    return out


def solve(points: Sequence[Point2], k: int) -> SolutionNetwork:
    if k == 0:
        return mbsn0(points)
    if k == 1:
        return mbsn1(points)
    if k == 2:
        return mbsn2(points)
    raise ValueError("k must be 0, 1 or 2")
