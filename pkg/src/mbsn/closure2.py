"""Optimal 2-block closure: partition the leaf blocks between two Steiner
points, classify the resulting base topology, and optimally embed the
cheapest critical topology.

Case 1: the base topology is already 2-connected; the two centres are
located by independent colour-spanning disks, with a bounded branching
discipline that keeps the two Steiner points attached to distinct
vertices of every multi-vertex isolated block.

Case 2 (connected input, base topology a path of blocks): either two
crossing Steiner edges chosen by scanning a split index along the block
path, or a direct Steiner-Steiner edge placed by the coupled two-disk
solver; the cheaper wins.

Case 3 (disconnected input with covered components): components reachable
from only one Steiner point receive one extra edge from the other, and
the Case 1 discipline runs with those components as additional colours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geom import Point2, distance, geometry_eps
from .graph import (Graph, BlockCutForest, block_cut_forest, connected_components,
                    is_biconnected, is_connected, make_graph)
from .scsd import ColorSystem, ScsdContext, coupled_two_disk

SteinerEdge = tuple[str, object]  # ('s1', v) | ('s2', v) | ('s1', 's2')


@dataclass(frozen=True)
class Partition:
    """Leaf-block ids assigned to each Steiner point."""

    side1: tuple[int, ...]
    side2: tuple[int, ...]


@dataclass(frozen=True)
class BlockPath:
    """Path structure of the base topology for Case 2.

    ``blocks`` are vertex sets of the abstract topology in path order with
    the first Steiner point interior to the first block; ``cells`` partition
    its vertices (first cell equals the first block, later cells drop the
    preceding cut vertex).
    """

    blocks: tuple[tuple[int, ...], ...]
    junctions: tuple[int, ...]
    cells: tuple[tuple[int, ...], ...]
    single_edge_first: bool
    single_edge_last: bool


@dataclass(frozen=True)
class CriticalTopology:
    partition: Partition
    case_tag: str  # 'case1' | 'case2' | 'case3'
    side1_classes: tuple[tuple[int, ...], ...]  # leaf-block interiors per side
    side2_classes: tuple[tuple[int, ...], ...]
    isolated_vertices: tuple[int, ...]
    isolated_multis: tuple[tuple[int, ...], ...]
    covered_by_s1: tuple[tuple[int, ...], ...]  # component vertex sets
    covered_by_s2: tuple[tuple[int, ...], ...]
    block_path: BlockPath | None
    base_topology: Graph


@dataclass(frozen=True)
class EmbeddedClosure:
    radius: float
    s1: Point2
    s2: Point2
    steiner_edges: tuple[SteinerEdge, ...]
    case_tag: str  # 'block' | 'case1' | 'case2_1' | 'case2_2' | 'case3'
    partition: Partition | None
    chosen_index: int | None = None  # split index for case2_1


def _edge_key(e: SteinerEdge) -> tuple:
    return (e[0], 1 if isinstance(e[1], str) else 0, e[1] if isinstance(e[1], int) else -1)


def enumerate_partitions(bcf: BlockCutForest, connected: bool) -> tuple[Partition, ...]:
    """All unordered 2-partitions of the leaf blocks; an empty side is
    allowed only for disconnected graphs."""
    leafs = list(bcf.leaf_blocks)
    q = len(leafs)
    if q == 0:
        return (Partition((), ()),) if not connected else ()
    parts = []
    for mask in range(1 << q):
        if not mask & 1:  # canonical orientation: first leaf block on side 1
            continue
        side1 = tuple(leafs[i] for i in range(q) if mask >> i & 1)
        side2 = tuple(leafs[i] for i in range(q) if not mask >> i & 1)
        if connected and not side2:
            continue
        parts.append(Partition(side1, side2))
    return tuple(parts)


def _block_path(base_topology: Graph, n: int) -> BlockPath:
    bcfm = block_cut_forest(base_topology)
    blocks = list(bcfm.blocks)
    assert len(blocks) >= 2
    ends = [i for i in bcfm.leaf_blocks]
    start = next(i for i in ends if n in blocks[i])
    order = [start]
    prev_cut: int | None = None
    while True:
        cur = blocks[order[-1]]
        cuts = [v for v in cur if v in bcfm.cut_vertices and v != prev_cut]
        if not cuts:
            break
        assert len(cuts) == 1, "base topology decomposition is not a path"
        tau = cuts[0]
        nxt = [bi for bi in bcfm.block_adjacency[tau] if bi != order[-1]]
        assert len(nxt) == 1, "base topology decomposition is not a path"
        order.append(nxt[0])
        prev_cut = tau
    path_blocks = tuple(blocks[i] for i in order)
    assert n in path_blocks[0] and n + 1 in path_blocks[-1]
    junctions = []
    for a, b in zip(path_blocks, path_blocks[1:]):
        shared = set(a) & set(b)
        assert len(shared) == 1
        junctions.append(shared.pop())
    cells = [path_blocks[0]]
    for i in range(1, len(path_blocks)):
        cells.append(tuple(v for v in path_blocks[i] if v != junctions[i - 1]))
    return BlockPath(
        blocks=path_blocks,
        junctions=tuple(junctions),
        cells=tuple(cells),
        single_edge_first=len(path_blocks[0]) == 2,
        single_edge_last=len(path_blocks[-1]) == 2,
    )


def classify(g: Graph, partition: Partition, bcf: BlockCutForest | None = None) -> CriticalTopology:
    """Build the abstract base topology for one partition and tag the case."""
    if bcf is None:
        bcf = block_cut_forest(g)
    leaf_ids = set(bcf.leaf_blocks)
    s1set, s2set = set(partition.side1), set(partition.side2)
    if s1set | s2set != leaf_ids or s1set & s2set:
        raise ValueError("partition does not match the leaf blocks")
    comps = connected_components(g)
    connected = len(comps) <= 1
    if connected and (not partition.side1 or not partition.side2):
        raise ValueError("one-sided partition on a connected graph")

    n = g.vertex_count
    s1, s2 = n, n + 1
    isolated_vertices: list[int] = []
    isolated_multis: list[tuple[int, ...]] = []
    for bid in bcf.isolated_blocks:
        blk = bcf.blocks[bid]
        if len(blk) == 1:
            isolated_vertices.append(blk[0])
        else:
            isolated_multis.append(blk)

    e0: list[tuple[int, int]] = []
    for bid in partition.side1:
        e0.append((s1, min(bcf.interiors[bid])))
    for bid in partition.side2:
        e0.append((s2, min(bcf.interiors[bid])))
    for v in isolated_vertices:
        e0 += [(s1, v), (s2, v)]
    for blk in isolated_multis:
        e0 += [(s1, blk[0]), (s2, blk[1])]
    m0 = make_graph(n + 2, list(g.edges) + e0)

    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    blocks_per_comp: dict[int, int] = {}
    for blk in bcf.blocks:
        ci = comp_of[blk[0]]
        blocks_per_comp[ci] = blocks_per_comp.get(ci, 0) + 1
    sides_per_comp: dict[int, set[int]] = {}
    for bid in bcf.leaf_blocks:
        ci = comp_of[bcf.blocks[bid][0]]
        sides_per_comp.setdefault(ci, set()).add(1 if bid in s1set else 2)
    covered1: list[tuple[int, ...]] = []
    covered2: list[tuple[int, ...]] = []
    for ci, comp in enumerate(comps):
        if blocks_per_comp[ci] <= 1:
            continue  # block components are never covered
        sides = sides_per_comp[ci]
        if sides == {1}:
            covered1.append(tuple(comp))
        elif sides == {2}:
            covered2.append(tuple(comp))

    if is_biconnected(m0):
        tag, bp = "case1", None
    elif covered1 or covered2:
        tag, bp = "case3", None
    else:
        assert connected, "uncovered disconnected base topology must be 2-connected"
        tag, bp = "case2", _block_path(m0, n)

    return CriticalTopology(
        partition=partition,
        case_tag=tag,
        side1_classes=tuple(bcf.interiors[bid] for bid in partition.side1),
        side2_classes=tuple(bcf.interiors[bid] for bid in partition.side2),
        isolated_vertices=tuple(isolated_vertices),
        isolated_multis=tuple(isolated_multis),
        covered_by_s1=tuple(covered1),
        covered_by_s2=tuple(covered2),
        block_path=bp,
        base_topology=m0,
    )


def _locate_pair(ctx: ScsdContext,
                 base1: Sequence[Sequence[int]],
                 base2: Sequence[Sequence[int]],
                 singles: Sequence[int],
                 zsets: Sequence[Sequence[int]]):
    """Two independent disks whose chosen neighbours must differ inside every
    multi-vertex isolated block.

    Greedy sequential placement in both orders, then bounded recursion over
    protection choices: a block may be pinned so that one Steiner point uses
    a specific vertex while the other keeps the rest of the block.
    """
    zsets = [tuple(sorted(z)) for z in zsets]
    nz = len(zsets)
    best: list = [math.inf, None]
    seen: set = set()

    def build_classes(side_first: int, pins) -> tuple[list | None, list | None]:
        first, second = [], []
        for z, pin in zip(zsets, pins):
            if pin is None:
                first.append(list(z))
                second.append(None)  # filled after the first disk picks
            else:
                side, y = pin
                mine = [y] if side == side_first else [v for v in z if v != y]
                theirs = [v for v in z if v != y] if side == side_first else [y]
                first.append(mine)
                second.append(theirs)
        return first, second

    def evaluate(pins) -> list[tuple[int, int]]:
        branch_picks: list[tuple[int, int]] = []
        for side_first in (1, 2):
            base_f = base1 if side_first == 1 else base2
            base_s = base2 if side_first == 1 else base1
            zf, zs = build_classes(side_first, pins)
            classes_f = [list(c) for c in base_f] + [[v] for v in singles] + zf
            if any(not c for c in classes_f):
                continue
            rf, cf, picks_f = ctx.best_center(classes_f)
            zpicks_f = picks_f[len(base_f) + len(singles):]
            zs_filled = []
            for zi, cls in enumerate(zs):
                if cls is None:
                    cls = [v for v in zsets[zi] if v != zpicks_f[zi]]
                zs_filled.append(cls)
            classes_s = [list(c) for c in base_s] + [[v] for v in singles] + zs_filled
            if any(not c for c in classes_s):
                continue
            rs, cs_, picks_s = ctx.best_center(classes_s)
            r = max(rf, rs)
            if side_first == 1:
                cand = (r, cf, cs_, picks_f, picks_s)
            else:
                cand = (r, cs_, cf, picks_s, picks_f)
            if cand[0] < best[0]:
                best[0], best[1] = cand[0], cand[1:]
            zpicks_s = picks_s[len(base_s) + len(singles):]
            for zi in range(nz):
                if pins[zi] is None:
                    branch_picks.append((zi, zpicks_f[zi]))
                    branch_picks.append((zi, zpicks_s[zi]))
        return sorted(set(branch_picks))

    def recurse(pins) -> None:
        key = tuple(pins)
        if key in seen or len(seen) > 20000:
            return
        seen.add(key)
        for zi, y in evaluate(pins):
            for side in (1, 2):
                nxt = list(pins)
                nxt[zi] = (side, y)
                recurse(nxt)

    recurse([None] * nz)
    if best[1] is None:
        raise ValueError("no feasible Steiner pair (a colour class was emptied)")
    c1, c2, picks1, picks2 = best[1]
    return best[0], c1, c2, picks1, picks2


def _case13_common(ctx: ScsdContext, topo: CriticalTopology, tag: str) -> EmbeddedClosure:
    base1 = [list(c) for c in topo.side1_classes] + [list(c) for c in topo.covered_by_s2]
    base2 = [list(c) for c in topo.side2_classes] + [list(c) for c in topo.covered_by_s1]
    r, c1, c2, picks1, picks2 = _locate_pair(ctx, base1, base2, topo.isolated_vertices, topo.isolated_multis)
    edges: set[SteinerEdge] = set()
    for v in picks1:
        edges.add(("s1", v))
    for v in picks2:
        edges.add(("s2", v))
    return EmbeddedClosure(r, c1, c2, tuple(sorted(edges, key=_edge_key)),
                           tag, topo.partition)


def locate_case1(g: Graph, points: Sequence[Point2], topo: CriticalTopology,
                 ctx: ScsdContext | None = None) -> EmbeddedClosure:
    assert topo.case_tag == "case1"
    return _case13_common(ctx or ScsdContext(points), topo, "case1")


def locate_case3(g: Graph, points: Sequence[Point2], topo: CriticalTopology,
                 ctx: ScsdContext | None = None) -> EmbeddedClosure:
    assert topo.case_tag == "case3"
    return _case13_common(ctx or ScsdContext(points), topo, "case3")


def _distinct_disk(ctx: ScsdContext, classes: list[list[int]], ia: int, ib: int):
    """best_center with the extra requirement that the disk reaches two
    distinct vertices for classes ia and ib; exact by conditioning on the
    witness of class ia (the disk only has to reach it, so forcing the
    class to a single vertex never loses solutions)."""
    r, c, picks = ctx.best_center(classes)
    if picks[ia] != picks[ib]:
        return r, c, picks
    best = None
    for x in classes[ia]:
        mod = [list(cl) for cl in classes]
        mod[ia] = [x]
        mod[ib] = [v for v in classes[ib] if v != x]
        if not mod[ib]:
            continue
        r2, c2, p2 = ctx.best_center(mod)
        if best is None or r2 < best[0]:
            best = (r2, c2, p2)
    return best


def locate_case2(g: Graph, points: Sequence[Point2], topo: CriticalTopology,
                 ctx: ScsdContext | None = None) -> EmbeddedClosure:
    """Better of: crossing-edge topologies scanned along the block path
    (no Steiner-Steiner edge), and the adjacent-Steiner topology embedded
    by the coupled two-disk solver."""
    assert topo.case_tag == "case2" and topo.block_path is not None
    if ctx is None:
        ctx = ScsdContext(points)
    bp = topo.block_path
    n = g.vertex_count
    p = len(bp.blocks)
    cells_x = [tuple(v for v in cell if v < n) for cell in bp.cells]
    static_cell = {v: i + 1 for i, cell in enumerate(cells_x) for v in cell}
    side1 = [list(c) for c in topo.side1_classes]
    side2 = [list(c) for c in topo.side2_classes]

    i0 = [i for i in range(1, p + 1)
          if not (i == 1 and bp.single_edge_first) and not (i == p and bp.single_edge_last)]
    best21 = None
    for a in i0:
        corner1 = len(side1) == 1 and a == 2
        if corner1:
            h1 = sorted(v for v in range(n))  # whole vertex set; attachment excluded via distinctness
            res = _distinct_disk(ctx, side1 + [h1], 0, 1)
        else:
            h1 = sorted(v for cell in cells_x[a - 1:] for v in cell)
            if not h1:
                continue
            res = ctx.best_center(side1 + [h1])
        if res is None:
            continue
        r1, c1, picks1 = res
        hpick = picks1[-1]
        if corner1 and static_cell[hpick] == 1:
            b = 2  # the embedded attachment shifts the first cell boundary
        else:
            b = static_cell[hpick]
        if b == p:
            # reachable only when the far end block is fat, so the second
            # Steiner point keeps at least two edges of its own
            assert len(side2) >= 2
            r2, c2, picks2 = ctx.best_center(side2)
            h2pick = None
        elif len(side2) == 1 and b == p - 1:
            h2 = sorted(v for v in range(n))
            res2 = _distinct_disk(ctx, side2 + [h2], 0, 1)
            if res2 is None:
                continue
            r2, c2, picks2 = res2
            h2pick = picks2[-1]
            picks2 = picks2[:-1]
        else:
            tau_b = bp.junctions[b - 1] if b < p else None
            h2 = sorted(v for cell in cells_x[:b] for v in cell if v != tau_b)
            if not h2:
                continue
            r2, c2, picks2 = ctx.best_center(side2 + [h2])
            h2pick = picks2[-1]
            picks2 = picks2[:-1]
        r = max(r1, r2)
        if best21 is None or r < best21[0]:
            edges: set[SteinerEdge] = {("s1", v) for v in picks1[:-1]} | {("s1", hpick)}
            edges |= {("s2", v) for v in picks2}
            if h2pick is not None:
                edges.add(("s2", h2pick))
            best21 = (r, c1, c2, tuple(sorted(edges, key=_edge_key)), a)

    cs1 = ColorSystem(tuple(tuple(points[v] for v in c) for c in topo.side1_classes))
    cs2 = ColorSystem(tuple(tuple(points[v] for v in c) for c in topo.side2_classes))
    s1c, s2c, rc = coupled_two_disk(cs1, cs2)
    edges22: set[SteinerEdge] = {("s1", "s2")}
    for cls in side1:
        edges22.add(("s1", ctx.nearest_in_class(s1c, cls)))
    for cls in side2:
        edges22.add(("s2", ctx.nearest_in_class(s2c, cls)))
    cand22 = (rc, s1c, s2c, tuple(sorted(edges22, key=_edge_key)))

    if best21 is not None and best21[0] <= cand22[0]:
        r, c1, c2, edges, a = best21
        return EmbeddedClosure(r, c1, c2, edges, "case2_1", topo.partition, chosen_index=a)
    r, c1, c2, edges = cand22
    return EmbeddedClosure(r, c1, c2, edges, "case2_2", topo.partition)


_ANGLES = [2.0 * math.pi * k / 16.0 for k in range(16)]


def _shift(p: Point2, ang: float, d: float) -> Point2:
    return Point2(p.x + d * math.cos(ang), p.y + d * math.sin(ang))


def separate_coincident(points: Sequence[Point2], steiner: list[Point2],
                        neighbors: list[list[Point2]],
                        linked: list[tuple[int, int]]) -> list[Point2]:
    """Nudge Steiner points apart from terminals and each other by the
    instance tolerance, along the direction that least stretches their
    planned edges."""
    eps = geometry_eps(list(points) + steiner)
    terminal_set = {p.as_tuple() for p in points}
    out = list(steiner)

    def stretch(i: int, cand: Point2) -> float:
        worst = max((distance(cand, q) for q in neighbors[i]), default=0.0)
        for a, b in linked:
            other = out[b] if a == i else out[a] if b == i else None
            if other is not None:
                worst = max(worst, distance(cand, other))
        return worst

    for _ in range(8):
        dirty = False
        # coincident Steiner pairs move a full eps apart in opposite
        # directions so the re-check definitely clears
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                if distance(out[i], out[j]) < eps:
                    best = None
                    for ang in _ANGLES:
                        ci = _shift(out[i], ang, eps)
                        cj = _shift(out[j], ang + math.pi, eps)
                        val = max(stretch(i, ci), stretch(j, cj))
                        if best is None or val < best[0]:
                            best = (val, ci, cj)
                    assert best is not None
                    out[i], out[j] = best[1], best[2]
                    dirty = True
        # Steiner points sitting on terminals move away
        for i in range(len(out)):
            if out[i].as_tuple() in terminal_set or any(
                    distance(out[i], p) < eps for p in points):
                best = None
                for ang in _ANGLES:
                    ci = _shift(out[i], ang, 1.2 * eps)
                    if any(distance(ci, p) < eps for p in points):
                        continue
                    val = stretch(i, ci)
                    if best is None or val < best[0]:
                        best = (val, ci)
                assert best is not None
                out[i] = best[1]
                dirty = True
        if not dirty:
            break
    return out


def _separate_embedding(emb: EmbeddedClosure, points: Sequence[Point2]) -> EmbeddedClosure:
    nbrs1 = [points[e[1]] for e in emb.steiner_edges if e[0] == "s1" and isinstance(e[1], int)]
    nbrs2 = [points[e[1]] for e in emb.steiner_edges if e[0] == "s2" and isinstance(e[1], int)]
    has_ss = ("s1", "s2") in emb.steiner_edges
    fixed = separate_coincident(points, [emb.s1, emb.s2], [nbrs1, nbrs2],
                                [(0, 1)] if has_ss else [])
    s1, s2 = fixed
    r = 0.0
    for e in emb.steiner_edges:
        if e == ("s1", "s2"):
            r = max(r, distance(s1, s2))
        elif e[0] == "s1":
            r = max(r, distance(s1, points[e[1]]))
        else:
            r = max(r, distance(s2, points[e[1]]))
    return EmbeddedClosure(r, s1, s2, emb.steiner_edges, emb.case_tag,
                           emb.partition, emb.chosen_index)


def optimal_2block_closure(g: Graph, points: Sequence[Point2],
                           ctx: ScsdContext | None = None) -> EmbeddedClosure:
    """Minimum over all partitions and applicable cases; Steiner points are
    nudged apart when the optimiser returns coincident locations."""
    n = g.vertex_count
    if n < 1:
        raise ValueError("empty instance")
    if ctx is None:
        ctx = ScsdContext(points)

    if is_biconnected(g):
        if not g.edges:
            # single vertex: a 4-cycle through two zero-cost Steiner points
            emb = EmbeddedClosure(0.0, points[0], points[0],
                                  (("s1", 0), ("s1", "s2"), ("s2", 0)), "block", None)
            return _separate_embedding(emb, points)
        assert g.lengths is not None
        ln, (u, v) = min(zip(g.lengths, g.edges))
        pu, pv = points[u], points[v]
        s1 = Point2(pu.x + (pv.x - pu.x) / 3.0, pu.y + (pv.y - pu.y) / 3.0)
        s2 = Point2(pu.x + 2.0 * (pv.x - pu.x) / 3.0, pu.y + 2.0 * (pv.y - pu.y) / 3.0)
        emb = EmbeddedClosure(ln / 3.0, s1, s2,
                              (("s1", u), ("s1", "s2"), ("s2", v)), "block", None)
        return _separate_embedding(emb, points)

    bcf = block_cut_forest(g)
    connected = is_connected(g)
    best: EmbeddedClosure | None = None
    for part in enumerate_partitions(bcf, connected):
        topo = classify(g, part, bcf)
        if topo.case_tag == "case1":
            emb = locate_case1(g, points, topo, ctx)
        elif topo.case_tag == "case2":
            emb = locate_case2(g, points, topo, ctx)
        else:
            emb = locate_case3(g, points, topo, ctx)
        if best is None or emb.radius < best.radius:
            best = emb
    assert best is not None, "no partition produced a closure"
    return _separate_embedding(best, points)
