"""Smallest colour-spanning disks and the coupled two-disk solver.

A colour-spanning disk must contain at least one point of every colour
class.  The optimum is determined by one point (radius 0), two diametral
points, or three boundary points, so exhaustive enumeration of points,
pair midpoints and triple circumcentres is exact.  The coupled solver
places two adjacent disk centres whose mutual distance also counts
towards the objective.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geom import Circle, Point2, circumcenter, distance, geometry_eps, real_quartic_roots


@dataclass(frozen=True)
class ColorSystem:
    """Nonempty point classes, one colour per class."""

    classes: tuple[tuple[Point2, ...], ...]

    def __post_init__(self) -> None:
        if not self.classes:
            raise ValueError("colour system needs at least one class")
        if any(not cls for cls in self.classes):
            raise ValueError("empty colour class")

    @property
    def total_points(self) -> int:
        return sum(len(c) for c in self.classes)


def color_system(classes: Sequence[Sequence[Point2]]) -> ColorSystem:
    return ColorSystem(tuple(tuple(c) for c in classes))


@dataclass(frozen=True)
class ScsdResult:
    disk: Circle
    determinators: tuple[Point2, ...]
    nearest_per_color: tuple[Point2, ...]


class ScsdContext:
    """Candidate centres and centre-to-point distances shared across many
    disk queries on one fixed point set.

    Candidates are every input point (sorted lexicographically so ties
    resolve to the lexicographically first point), every pair midpoint and
    every non-collinear triple circumcentre.  Queries pass colour classes
    as index lists into ``points``.
    """

    def __init__(self, points: Sequence[Point2]):
        self.points = tuple(points)
        self.eps = geometry_eps(points)
        n = len(points)
        pts = np.array([[p.x, p.y] for p in points], dtype=float).reshape(n, 2)
        cands = [pts[np.lexsort((pts[:, 1], pts[:, 0]))]]
        if n >= 2:
            ii, jj = np.triu_indices(n, 1)
            cands.append((pts[ii] + pts[jj]) / 2.0)
        if n >= 3:
            trips = np.array(list(itertools.combinations(range(n), 3)), dtype=int)
            a, b, c = pts[trips[:, 0]], pts[trips[:, 1]], pts[trips[:, 2]]
            bb, cc = b - a, c - a
            cross = bb[:, 0] * cc[:, 1] - bb[:, 1] * cc[:, 0]
            scale = self.eps * max(1.0, float(np.abs(pts).max())) * 2.0
            ok = np.abs(cross) > scale
            if ok.any():
                bb, cc, a2, cr = bb[ok], cc[ok], a[ok], cross[ok]
                b2 = (bb * bb).sum(axis=1)
                c2 = (cc * cc).sum(axis=1)
                ux = (cc[:, 1] * b2 - bb[:, 1] * c2) / (2.0 * cr)
                uy = (bb[:, 0] * c2 - cc[:, 0] * b2) / (2.0 * cr)
                cands.append(a2 + np.stack([ux, uy], axis=1))
        self.cand = np.vstack(cands)
        d = self.cand[:, None, :] - pts[None, :, :]
        self.dist = np.hypot(d[..., 0], d[..., 1])
        self._class_min: dict[tuple[int, ...], np.ndarray] = {}

    def _class_min_vector(self, cls: Sequence[int]) -> np.ndarray:
        if len(cls) == 1:
            return self.dist[:, cls[0]]
        key = tuple(cls)
        vec = self._class_min.get(key)
        if vec is None:
            vec = self.dist[:, list(cls)].min(axis=1)
            if len(self._class_min) < 4096:
                self._class_min[key] = vec
        return vec

    def objective_values(self, classes: Sequence[Sequence[int]]) -> np.ndarray:
        """max-over-classes of min-distance, evaluated at every candidate."""
        if any(len(c) == 0 for c in classes):
            raise ValueError("empty colour class")
        f = None
        for cls in classes:
            m = self._class_min_vector(cls)
            f = m if f is None else np.maximum(f, m)
        return f

    def best_center(self, classes: Sequence[Sequence[int]]) -> tuple[float, Point2, tuple[int, ...]]:
        """Minimise max-over-classes of min-distance; returns radius, centre,
        and one nearest vertex index per class (ties lexicographic by point)."""
        f = self.objective_values(classes)
        i = int(np.argmin(f))
        center = Point2(float(self.cand[i, 0]), float(self.cand[i, 1]))
        picks = tuple(self.nearest_in_class(center, cls) for cls in classes)
        return float(f[i]), center, picks

    def nearest_in_class(self, x: Point2, cls: Sequence[int]) -> int:
        best = None
        for v in cls:
            p = self.points[v]
            key = (math.hypot(p.x - x.x, p.y - x.y), p.x, p.y)
            if best is None or key < best[0]:
                best = (key, v)
        assert best is not None
        return best[1]


def _flatten(cs: ColorSystem) -> tuple[list[Point2], list[list[int]]]:
    pts: list[Point2] = []
    classes: list[list[int]] = []
    for cls in cs.classes:
        idx = []
        for p in cls:
            idx.append(len(pts))
            pts.append(p)
        classes.append(idx)
    return pts, classes


def class_radius(cs: ColorSystem, z: Point2) -> float:
    """Objective f(z): max over colours of the distance to the nearest point."""
    return max(min(distance(z, p) for p in cls) for cls in cs.classes)


def nearest_per_color(x: Point2, cs: ColorSystem) -> tuple[Point2, ...]:
    """One closest point per colour; ties broken lexicographically by (x, y)."""
    out = []
    for cls in cs.classes:
        out.append(min(cls, key=lambda p: (distance(x, p), p.x, p.y)))
    return tuple(out)


def smallest_color_spanning_disk(cs: ColorSystem) -> ScsdResult:
    """Exact SCSD by candidate enumeration over points, midpoints and
    circumcentres, with the nearest-per-colour set computed at the centre."""
    pts, classes = _flatten(cs)
    ctx = ScsdContext(pts)
    r, center, _ = ctx.best_center(classes)
    nearest = nearest_per_color(center, cs)
    tol = max(ctx.eps, 1e-12 * (1.0 + r))
    if r <= tol:
        dets: tuple[Point2, ...] = (nearest[0],)
    else:
        dets = tuple(sorted({p.as_tuple() for p in nearest
                             if abs(distance(center, p) - r) <= tol}))
        dets = tuple(Point2(x, y) for x, y in dets)
    return ScsdResult(Circle(center, r), dets, nearest)


def _cross_class_pairs(classes: list[list[Point2]]) -> list[tuple[Point2, Point2]]:
    pairs = []
    seen = set()
    for i, ci in enumerate(classes):
        for cj in classes[i + 1:]:
            for p in ci:
                for q in cj:
                    key = tuple(sorted((p.as_tuple(), q.as_tuple())))
                    if p.as_tuple() != q.as_tuple() and key not in seen:
                        seen.add(key)
                        pairs.append((p, q))
    return pairs


def _anchored_center(cs: ColorSystem, anchor: Point2) -> tuple[float, Point2]:
    """Best disk for cs that must also reach the anchor point."""
    aug = ColorSystem(cs.classes + ((anchor,),))
    res = smallest_color_spanning_disk(aug)
    return res.disk.radius, res.disk.center


def coupled_two_disk(cs1: ColorSystem, cs2: ColorSystem) -> tuple[Point2, Point2, float]:
    """Place adjacent centres s1, s2 minimising
    max(f1(s1), f2(s2), |s1 s2|) where f_i is the colour-spanning objective.

    Candidates cover every stationary structure of the objective:
    independent optima, one centre anchored to the other, the collinear
    three-leg balance, and the fully coupled configurations where each
    centre is pinned by one or two of its own points plus the partner
    (quadratic and quartic systems), plus circumcentre/midpoint pairs.
    Every candidate is validated by direct objective evaluation.
    """
    all_pts = [p for cls in cs1.classes for p in cls] + [p for cls in cs2.classes for p in cls]
    eps = geometry_eps(all_pts)
    best: list = [math.inf, None, None]

    def consider(s1: Point2, s2: Point2) -> None:
        val = max(class_radius(cs1, s1), class_radius(cs2, s2), distance(s1, s2))
        if val < best[0] - 0.0:
            best[0], best[1], best[2] = val, s1, s2

    r1 = smallest_color_spanning_disk(cs1)
    r2 = smallest_color_spanning_disk(cs2)
    consider(r1.disk.center, r2.disk.center)

    merged = ColorSystem(cs1.classes + cs2.classes)
    cm = smallest_color_spanning_disk(merged).disk.center
    consider(cm, cm)

    pts1 = sorted({p.as_tuple() for cls in cs1.classes for p in cls})
    pts2 = sorted({p.as_tuple() for cls in cs2.classes for p in cls})
    pts1 = [Point2(x, y) for x, y in pts1]
    pts2 = [Point2(x, y) for x, y in pts2]

    # Three collinear legs p - s1 - s2 - q, each of length |pq| / 3.
    for p in pts1:
        for q in pts2:
            consider(Point2(p.x + (q.x - p.x) / 3.0, p.y + (q.y - p.y) / 3.0),
                     Point2(p.x + 2.0 * (q.x - p.x) / 3.0, p.y + 2.0 * (q.y - p.y) / 3.0))

    # Rest one side at any of its locally optimal disk structures (its own
    # candidate centres, cheapest first) and re-solve the other side with
    # that centre as an extra colour.  This covers optima where the busy
    # side sits at a non-global local minimum close to the quiet side.
    for (csa, csb, swap) in ((cs1, cs2, False), (cs2, cs1, True)):
        apts, aclasses = _flatten(csa)
        actx = ScsdContext(apts)
        fvals = actx.objective_values(aclasses)
        order = np.argsort(fvals, kind="stable")[:64]
        seen_anchor: set[tuple[float, float]] = set()
        first = True
        for i in order:
            # a structure whose own radius already exceeds the incumbent
            # cannot produce a better pair (ascending order, so stop)
            if not first and fvals[i] >= best[0]:
                break
            first = False
            anchor = Point2(float(actx.cand[i, 0]), float(actx.cand[i, 1]))
            key = anchor.as_tuple()
            if key in seen_anchor:
                continue
            seen_anchor.add(key)
            _, z = _anchored_center(csb, anchor)
            consider(z, anchor) if swap else consider(anchor, z)

    classes1 = [list(c) for c in cs1.classes]
    classes2 = [list(c) for c in cs2.classes]
    pairs1 = _cross_class_pairs(classes1)
    pairs2 = _cross_class_pairs(classes2)

    # One side pinned by a cross-class pair, the other by a single point,
    # partner distance active on both: quadratic along the bisector.
    for (pairs, singles, swap) in ((pairs1, pts2, False), (pairs2, pts1, True)):
        for p1, p2 in pairs:
            mx, my = (p1.x + p2.x) / 2.0, (p1.y + p2.y) / 2.0
            h = distance(p1, p2) / 2.0
            dx, dy = p2.y - p1.y, p1.x - p2.x
            dn = math.hypot(dx, dy)
            if dn == 0.0:
                continue
            dx, dy = dx / dn, dy / dn
            for q in singles:
                wx, wy = mx - q.x, my - q.y
                a = wx * dx + wy * dy
                c0 = 4.0 * h * h - (wx * wx + wy * wy)
                disc = a * a - 3.0 * c0
                # crossing roots, the projection of q onto the bisector, and
                # the pair midpoint: the minimum of the two branches along
                # the bisector family is always one of these
                cands_v = [-a, 0.0]
                if disc >= 0.0:
                    cands_v += [(a + math.sqrt(disc)) / 3.0,
                                (a - math.sqrt(disc)) / 3.0]
                for v in cands_v:
                    sa = Point2(mx + v * dx, my + v * dy)
                    sb = Point2((q.x + sa.x) / 2.0, (q.y + sa.y) / 2.0)
                    consider(sb, sa) if swap else consider(sa, sb)

    # One side pinned by a cross-class triple (circumcentre), the partner
    # constraint collinear: the other centre sits midway to its own point.
    for (cls, singles, swap) in ((classes1, pts2, False), (classes2, pts1, True)):
        flat = sorted({p.as_tuple() for c in cls for p in c})
        flat = [Point2(x, y) for x, y in flat]
        for trip in itertools.combinations(flat, 3):
            o = circumcenter(*trip)
            if o is None:
                continue
            for q in singles:
                sb = Point2((o.x + q.x) / 2.0, (o.y + q.y) / 2.0)
                consider(sb, o) if swap else consider(o, sb)

    # Both sides pinned by cross-class pairs plus the partner distance:
    # a quartic in the bisector parameter of side 1.
    for p1, p2 in pairs1:
        m1x, m1y = (p1.x + p2.x) / 2.0, (p1.y + p2.y) / 2.0
        h1 = distance(p1, p2) / 2.0
        if h1 >= best[0]:
            continue
        d1x, d1y = p2.y - p1.y, p1.x - p2.x
        n1 = math.hypot(d1x, d1y)
        d1x, d1y = d1x / n1, d1y / n1
        for q1, q2 in pairs2:
            h2 = distance(q1, q2) / 2.0
            if h2 >= best[0]:
                continue
            m2x, m2y = (q1.x + q2.x) / 2.0, (q1.y + q2.y) / 2.0
            if math.hypot(m1x - m2x, m1y - m2y) > 3.0 * best[0] + eps:
                continue
            d2x, d2y = q2.y - q1.y, q1.x - q2.x
            n2 = math.hypot(d2x, d2y)
            d2x, d2y = d2x / n2, d2y / n2
            wx, wy = m1x - m2x, m1y - m2y
            a = wx * d1x + wy * d1y
            b = wx * d2x + wy * d2y
            c = d1x * d2x + d1y * d2y
            kk = wx * wx + wy * wy - h2 * h2
            ee = h1 * h1 - h2 * h2
            q4 = 1.0 - 4.0 * c * c
            q3 = 4.0 * a - 8.0 * b * c
            q2c = 4.0 * a * a + 2.0 * kk - 4.0 * b * b - 4.0 * c * c * ee
            q1c = 4.0 * a * kk - 8.0 * b * c * ee
            q0 = kk * kk - 4.0 * b * b * ee
            if max(abs(q4), abs(q3), abs(q2c), abs(q1c), abs(q0)) == 0.0:
                continue
            for u in real_quartic_roots(q4, q3, q2c, q1c, q0):
                vv = u * u + ee
                if vv < -eps:
                    continue
                den = 2.0 * (c * u + b)
                cands_v = []
                if abs(den) > 1e-12 * max(1.0, abs(u)):
                    cands_v.append((u * u + 2.0 * a * u + kk) / den)
                if vv >= 0.0:
                    root = math.sqrt(max(vv, 0.0))
                    cands_v.extend((root, -root))
                for v in cands_v:
                    consider(Point2(m1x + u * d1x, m1y + u * d1y),
                             Point2(m2x + v * d2x, m2y + v * d2y))

    assert best[1] is not None and best[2] is not None
    return best[1], best[2], best[0]
