"""From a generating curve in the half-plane to its double point tree.

A generating curve is a polyline in {r >= 0} with both endpoints on the axis
r = 0.  Rotating it about the axis sweeps an immersed sphere; every
transverse self-crossing of the curve sweeps a circle of double points whose
preimages are the two latitudes at the crossing's parameters.  Cutting the
parameter interval at those latitudes yields a path tree: one vertex per
parameter segment, one edge per crossing parameter, conjugate edges paired by
crossing identity, each edge directed away from its pair's parameter
interval.  The degree of a segment is the sum of the winding numbers of the
two planar faces beside it, computed on the closed curve obtained by gluing
the polyline to its axis mirror.

All geometry is floating point with a configurable tolerance; genericity
violations (tangential or near-vertex crossings, coincident crossings) are
rejected loudly rather than guessed at.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CurveError, GeometryError
from .tree import DoublePointTree, negate as negate_tree, validate

__all__ = [
    "GeneratingCurve",
    "PlanarCrossing",
    "FaceSample",
    "self_intersections",
    "doubled_winding",
    "orientation_sign",
    "tree_of_revolution",
    "DEFAULT_TOLERANCE",
    "DEFAULT_ANGLE_DEG",
]

DEFAULT_TOLERANCE = 1e-9
DEFAULT_ANGLE_DEG = 1.0

Point = tuple[float, float]


@dataclass(frozen=True)
class GeneratingCurve:
    """Polyline (r, z) with r >= 0 and both endpoints on the axis."""

    points: tuple[Point, ...]
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        pts = [(float(r), float(z)) for r, z in self.points]
        tol = float(self.tolerance)
        if tol <= 0:
            raise CurveError("tolerance must be positive")
        if len(pts) < 2:
            raise CurveError("curve needs at least two points")
        for r, z in pts:
            if not (math.isfinite(r) and math.isfinite(z)):
                raise CurveError("curve coordinates must be finite")
            if r < -tol:
                raise CurveError(f"point ({r}, {z}) lies at negative radius")
        for label, (r, z) in (("first", pts[0]), ("last", pts[-1])):
            if abs(r) > tol:
                raise CurveError(f"{label} point must lie on the axis (r=0)")
        pts[0] = (0.0, pts[0][1])
        pts[-1] = (0.0, pts[-1][1])
        for r, z in pts[1:-1]:
            if r <= tol:
                raise CurveError(f"interior point ({r}, {z}) touches the axis")
        for a, b in zip(pts, pts[1:]):
            if math.dist(a, b) <= tol:
                raise CurveError("consecutive points coincide")
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "tolerance", tol)

    # cumulative arc lengths, cached lazily through recomputation (cheap)
    def arclengths(self) -> list[float]:
        acc = [0.0]
        for a, b in zip(self.points, self.points[1:]):
            acc.append(acc[-1] + math.dist(a, b))
        return acc

    def scale(self) -> float:
        rs = [p[0] for p in self.points]
        zs = [p[1] for p in self.points]
        return max(max(rs) - min(rs), max(zs) - min(zs), 1.0e-30)


@dataclass(frozen=True)
class PlanarCrossing:
    location: Point
    t1: float
    t2: float


@dataclass(frozen=True)
class FaceSample:
    point: Point
    winding: int


# -- low level geometry --------------------------------------------------------


def _seg_params(p1: Point, p2: Point, p3: Point, p4: Point):
    """Intersection parameters (t, u) of segments p1p2 and p3p4, or None when
    the supporting lines are parallel."""
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (p4[0] - p3[0], p4[1] - p3[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if denom == 0.0:
        return None
    w = (p3[0] - p1[0], p3[1] - p1[1])
    t = (w[0] * d2[1] - w[1] * d2[0]) / denom
    u = (w[0] * d1[1] - w[1] * d1[0]) / denom
    return t, u


def _point_seg_dist(p: Point, a: Point, b: Point) -> float:
    ab = (b[0] - a[0], b[1] - a[1])
    ap = (p[0] - a[0], p[1] - a[1])
    den = ab[0] * ab[0] + ab[1] * ab[1]
    if den == 0.0:
        return math.dist(p, a)
    t = max(0.0, min(1.0, (ap[0] * ab[0] + ap[1] * ab[1]) / den))
    return math.dist(p, (a[0] + t * ab[0], a[1] + t * ab[1]))


def _dist_to_loop(p: Point, loop: list[Point]) -> float:
    best = math.inf
    for a, b in zip(loop, loop[1:] + loop[:1]):
        d = _point_seg_dist(p, a, b)
        if d < best:
            best = d
    return best


def _raw_winding(loop: list[Point], p: Point) -> int:
    """Winding number of the closed polyline around p by signed crossings of
    the horizontal ray toward +r."""
    w = 0
    x, y = p
    for a, b in zip(loop, loop[1:] + loop[:1]):
        ay, by = a[1], b[1]
        if ay <= y:
            if by > y:
                if _is_left(a, b, p) > 0:
                    w += 1
        elif by <= y:
            if _is_left(a, b, p) < 0:
                w -= 1
    return w


def _is_left(a: Point, b: Point, p: Point) -> float:
    return (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1])


def _doubled(curve: GeneratingCurve) -> list[Point]:
    pts = list(curve.points)
    mirror = [(-r, z) for r, z in reversed(pts[1:-1])]
    return pts + mirror


# -- crossings -----------------------------------------------------------------


def self_intersections(
    curve: GeneratingCurve, angle_threshold_deg: float = DEFAULT_ANGLE_DEG
) -> list[PlanarCrossing]:
    """All transverse self-crossings, each exactly once, sorted by the first
    parameter.  Raises :class:`CurveError` for non-generic inputs: crossings
    at tiny angles, too close to a polyline vertex, the axis, or each other.
    """
    pts = curve.points
    tol = curve.tolerance
    margin = 1000.0 * tol
    acc = curve.arclengths()
    total = acc[-1]
    min_sin = math.sin(math.radians(angle_threshold_deg))

    found: list[PlanarCrossing] = []
    nseg = len(pts) - 1
    for i in range(nseg):
        a, b = pts[i], pts[i + 1]
        for j in range(i + 1, nseg):
            c, d = pts[j], pts[j + 1]
            params = _seg_params(a, b, c, d)
            adjacent = j == i + 1
            if params is None:
                # parallel: reject overlapping collinear strands
                if (
                    _point_seg_dist(c, a, b) < margin
                    or _point_seg_dist(d, a, b) < margin
                ) and (
                    min(_point_seg_dist(c, a, b), _point_seg_dist(d, a, b))
                    < margin
                ):
                    if _overlap_len(a, b, c, d) > margin:
                        raise CurveError(
                            f"segments {i} and {j} overlap along a line"
                        )
                continue
            t, u = params
            slack = margin / max(math.dist(a, b), tol)
            slacku = margin / max(math.dist(c, d), tol)
            if t < -slack or t > 1 + slack or u < -slacku or u > 1 + slacku:
                continue
            px = a[0] + t * (b[0] - a[0])
            py = a[1] + t * (b[1] - a[1])
            p = (px, py)
            end_dist = min(
                math.dist(p, a), math.dist(p, b), math.dist(p, c), math.dist(p, d)
            )
            if adjacent and end_dist <= margin:
                continue  # shared corner of consecutive segments
            if px <= margin:
                raise CurveError(
                    f"crossing at ({px:.6g}, {py:.6g}) lies on or too close"
                    " to the axis"
                )
            if end_dist <= margin:
                raise CurveError(
                    f"crossing at ({px:.6g}, {py:.6g}) is too close to a "
                    "polyline vertex or endpoint"
                )
            d1 = (b[0] - a[0], b[1] - a[1])
            d2 = (d[0] - c[0], d[1] - c[1])
            cross = abs(d1[0] * d2[1] - d1[1] * d2[0])
            sin_angle = cross / (math.hypot(*d1) * math.hypot(*d2))
            if sin_angle < min_sin:
                raise CurveError(
                    f"near-tangential crossing at ({px:.6g}, {py:.6g}) "
                    f"(angle below {angle_threshold_deg} degrees)"
                )
            t1 = (acc[i] + t * (acc[i + 1] - acc[i])) / total
            t2 = (acc[j] + u * (acc[j + 1] - acc[j])) / total
            found.append(PlanarCrossing((px, py), t1, t2))

    for x in range(len(found)):
        for y in range(x + 1, len(found)):
            if math.dist(found[x].location, found[y].location) <= margin:
                raise CurveError(
                    "two crossings coincide within tolerance "
                    f"near ({found[x].location[0]:.6g}, {found[x].location[1]:.6g})"
                )
    found.sort(key=lambda cr: cr.t1)
    return found


def _overlap_len(a: Point, b: Point, c: Point, d: Point) -> float:
    ab = (b[0] - a[0], b[1] - a[1])
    L = math.hypot(*ab)
    if L == 0.0:
        return 0.0
    u = (ab[0] / L, ab[1] / L)
    s1, e1 = 0.0, L
    s2 = (c[0] - a[0]) * u[0] + (c[1] - a[1]) * u[1]
    e2 = (d[0] - a[0]) * u[0] + (d[1] - a[1]) * u[1]
    s2, e2 = min(s2, e2), max(s2, e2)
    return max(0.0, min(e1, e2) - max(s1, s2))


# -- windings ------------------------------------------------------------------


def orientation_sign(curve: GeneratingCurve) -> int:
    """Global sign normalizing windings so the face just inside the curve's
    outermost point has winding +1 (outward-facing convention).  Intrinsic to
    the unoriented curve: reversal and z-reflection leave it unchanged."""
    loop = _doubled(curve)
    pts = curve.points
    idx = max(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    # endpoints sit on the axis, so the outermost vertex is interior
    v = pts[idx]
    a, b = pts[idx - 1], pts[idx + 1]
    u1 = _unit((a[0] - v[0], a[1] - v[1]))
    u2 = _unit((b[0] - v[0], b[1] - v[1]))
    bis = (u1[0] + u2[0], u1[1] + u2[1])
    if math.hypot(*bis) < 1e-9:
        # straight passage through the outermost vertex: step inward
        n = (-u2[1], u2[0])
        bis = n if n[0] < 0 else (-n[0], -n[1])
    bis = _unit(bis)
    scale = curve.scale()
    eps = scale / 8.0
    for _ in range(80):
        probe = (v[0] + eps * bis[0], v[1] + eps * bis[1])
        d_all = _dist_to_loop(probe, loop)
        d_walls = min(_point_seg_dist(probe, a, v), _point_seg_dist(probe, v, b))
        if d_all > curve.tolerance and d_all >= d_walls * 0.999:
            w = _raw_winding(loop, probe)
            if abs(w) == 1:
                return w  # s * w == +1  =>  s == w
        eps *= 0.5
        if eps < curve.tolerance:
            break
    raise CurveError("cannot determine the curve's orientation sign")


def _unit(d: Point) -> Point:
    n = math.hypot(*d)
    if n == 0.0:
        return (0.0, 0.0)
    return (d[0] / n, d[1] / n)


def doubled_winding(curve: GeneratingCurve, point: Point) -> int:
    """Winding number of the doubled closed curve around ``point``, with the
    sign normalized by :func:`orientation_sign`."""
    loop = _doubled(curve)
    if _dist_to_loop(point, loop) <= curve.tolerance:
        raise CurveError(f"point {point!r} is too close to the curve")
    return orientation_sign(curve) * _raw_winding(loop, point)


# -- tree extraction -----------------------------------------------------------


def _segment_sample(
    curve: GeneratingCurve, lo: float, hi: float
) -> tuple[Point, Point]:
    """Sample point and unit left normal on the longest polyline piece of the
    parameter segment [lo, hi] (arclength-normalized parameters)."""
    acc = curve.arclengths()
    total = acc[-1]
    slo, shi = lo * total, hi * total
    best = None
    for i in range(len(curve.points) - 1):
        plo = max(slo, acc[i])
        phi = min(shi, acc[i + 1])
        if phi - plo > (best[0] if best else 0.0):
            best = (phi - plo, i, (plo + phi) / 2.0)
    if best is None:  # pragma: no cover - segments are never empty
        raise GeometryError("empty parameter segment")
    _, i, smid = best
    a, b = curve.points[i], curve.points[i + 1]
    L = acc[i + 1] - acc[i]
    t = (smid - acc[i]) / L
    p = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    u = ((b[0] - a[0]) / L, (b[1] - a[1]) / L)
    n_left = (-u[1], u[0])
    return p, n_left


def _face_pair(
    curve: GeneratingCurve,
    loop: list[Point],
    sign: int,
    p: Point,
    n_left: Point,
) -> tuple[FaceSample, FaceSample]:
    tol = curve.tolerance
    # the strand hosting p sits at distance ~0; clearance is the nearest of
    # everything else (mirror copy included)
    dists = sorted(
        _point_seg_dist(p, a, b) for a, b in zip(loop, loop[1:] + loop[:1])
    )
    rest = [d for d in dists if d > 10 * tol]
    clearance = rest[0] if rest else curve.scale()
    eps = min(tol * 1e6, clearance / 4.0)
    for _ in range(50):
        q_plus = (p[0] + eps * n_left[0], p[1] + eps * n_left[1])
        q_minus = (p[0] - eps * n_left[0], p[1] - eps * n_left[1])
        try:
            if (
                _dist_to_loop(q_plus, loop) > tol
                and _dist_to_loop(q_minus, loop) > tol
            ):
                w_plus = sign * _raw_winding(loop, q_plus)
                w_minus = sign * _raw_winding(loop, q_minus)
                if abs(w_plus - w_minus) == 1:
                    return FaceSample(q_plus, w_plus), FaceSample(q_minus, w_minus)
        except CurveError:
            pass
        eps *= 0.5
        if eps <= tol:
            break
    raise GeometryError(
        f"cannot place face samples beside ({p[0]:.6g}, {p[1]:.6g})"
    )


def tree_of_revolution(
    curve: GeneratingCurve,
    flip_orientation: bool = False,
    angle_threshold_deg: float = DEFAULT_ANGLE_DEG,
) -> DoublePointTree:
    """Double point tree of the immersed sphere swept by ``curve``.

    ``flip_orientation`` models the opposite surface normal and negates every
    vertex degree.
    """
    crossings = self_intersections(curve, angle_threshold_deg)
    loop = _doubled(curve)
    sign = orientation_sign(curve)

    events: list[tuple[float, int, int]] = []
    for idx, cr in enumerate(crossings):
        events.append((cr.t1, idx, 0))
        events.append((cr.t2, idx, 1))
    events.sort()

    cuts = [0.0] + [t for t, _, _ in events] + [1.0]
    deltas: list[int] = []
    for lo, hi in zip(cuts, cuts[1:]):
        p, n_left = _segment_sample(curve, lo, hi)
        f_plus, f_minus = _face_pair(curve, loop, sign, p, n_left)
        deltas.append(f_plus.winding + f_minus.winding)

    nseg = len(deltas)
    vertices = [(f"v{i}", deltas[i]) for i in range(nseg)]
    edges = []
    visit_position: dict[tuple[int, int], int] = {}
    for pos, (_, idx, visit) in enumerate(events):
        visit_position[(idx, visit)] = pos
        if visit == 0:
            edges.append((f"e{pos}", f"v{pos + 1}", f"v{pos}"))
        else:
            edges.append((f"e{pos}", f"v{pos}", f"v{pos + 1}"))
    pairing = [
        (f"e{visit_position[(idx, 0)]}", f"e{visit_position[(idx, 1)]}")
        for idx in range(len(crossings))
    ]
    tree = DoublePointTree.build(vertices, edges, pairing)
    report = validate(tree)
    if not report.ok:
        rules = ", ".join(sorted(report.rules()))
        raise GeometryError(
            f"extracted tree fails validation ({rules}); "
            "this indicates a winding computation problem"
        )
    if flip_orientation:
        tree = negate_tree(tree)
    return tree
