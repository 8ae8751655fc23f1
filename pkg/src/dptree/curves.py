"""Programmatic generating-curve fixtures.

Spheres of revolution with prescribed degree vectors, built from two
ingredients:

* spiral curves: a body arc that winds into (or pokes out of) itself m times
  and exits across all of its own coils, realizing the elementary vector e_k;
* curl grafts ("kinks"): a small loop inserted on any strand, crossing itself
  once.  A curl poked to the right of the travel direction raises the local
  degree ladder by 2, to the left it lowers it by 2 (for curves whose
  orientation sign is -1, which holds for every base here).  Chains of curls
  on curls realize the two-sided family 2*e_1 - e_k.

All fixtures keep feature sizes at or above 1e-2 so the default tolerance is
uncritical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PreconditionError
from .revolution import GeneratingCurve

__all__ = [
    "half_circle",
    "j_curve",
    "two_lobes",
    "f_curve",
    "g_curve",
]

Point = tuple[float, float]


def half_circle(samples: int = 65, radius: float = 1.0) -> GeneratingCurve:
    """Embedded arc from (0, radius) to (0, -radius); the round sphere."""
    pts = []
    for i in range(samples):
        t = math.pi * i / (samples - 1)
        pts.append((radius * math.sin(t), radius * math.cos(t)))
    pts[0] = (0.0, radius)
    pts[-1] = (0.0, -radius)
    return GeneratingCurve(tuple(pts))


def two_lobes() -> GeneratingCurve:
    """A curve whose two lobes overlap, crossing exactly twice."""
    return GeneratingCurve(
        (
            (0.0, 2.5),
            (1.0, 2.0),
            (1.0, -2.0),
            (0.3, -2.2),
            (2.0, -1.0),
            (2.0, 1.0),
            (0.3, 1.5),
            (0.0, 1.8),
        )
    )


def _require_odd(k: int) -> None:
    if k % 2 == 0:
        raise PreconditionError(f"index must be odd, got {k}")


def f_curve(k: int) -> GeneratingCurve:
    """Curve whose sphere of revolution has degree vector e_k.

    Positive k: the body arc winds (k-1)/2 turns into itself and the tail
    exits across every coil toward the axis, so the segment degrees walk
    1, 3, ..., k, ..., 3, 1 along the parameter.  Negative k: a chain of
    (1-k)/2 nested degree-lowering curls on the body.
    """
    _require_odd(k)
    if k == 1:
        return half_circle()
    if k >= 3:
        m = (k - 1) // 2
        T = [1.5 - 0.3 * i for i in range(m)]
        B = [-1.0 + 0.3 * i for i in range(m - 1)]
        E = (B[-1] + 0.15) if m >= 2 else -0.7
        L = [0.5 + 0.4 * i for i in range(m)]
        R_m = L[-1] + 0.8
        R = [R_m + 0.4 * (m - i) for i in range(1, m + 1)]
        W = R[0] + 0.8
        H = 3.0 + 0.3 * m
        B0 = -2.0 - 0.3 * m
        pts: list[Point] = [(0.0, H), (W, H - 1.0), (W, B0 + 1.0), (L[0], B0)]
        for i in range(m):
            pts.append((L[i], T[i]))
            pts.append((R[i], T[i]))
            if i < m - 1:
                pts.append((R[i], B[i]))
                pts.append((L[i + 1], B[i]))
            else:
                pts.append((R[i], E))
                pts.append((0.0, E))
        return GeneratingCurve(tuple(pts))
    # k <= -1: nested chain of degree-lowering curls
    spec: tuple[_Curl, ...] = ()
    for _ in range((1 - k) // 2):
        spec = (_Curl(0.5, 0.2, POKE_LEFT, spec),)
    return _graft_on_base(spec)


def j_curve() -> GeneratingCurve:
    """The one-coil spiral sphere; its tree is the 3-star with two leaves."""
    return f_curve(3)


# -- curl grafts ---------------------------------------------------------------

# Curl polyline in local coordinates (x along travel, y to the poke side);
# it crosses itself exactly once, at the anchor point.
_CURL = (
    (1.0, 0.0),
    (1.0, 1.2),
    (-1.0, 1.2),
    (-1.0, 0.6),
    (0.5, -0.3),
    (1.5, 0.0),
)
_CURL_TOP = (1, 2)  # indices of the bubble's reusable top strand

POKE_LEFT = 1
POKE_RIGHT = -1


@dataclass(frozen=True)
class _Curl:
    frac: float
    size: float
    side: int  # POKE_LEFT or POKE_RIGHT
    children: tuple = field(default_factory=tuple)


def _expand(a: Point, b: Point, curls: tuple[_Curl, ...]) -> list[Point]:
    """Points to insert strictly between a and b realizing the curls."""
    if not curls:
        return []
    ux, uy = b[0] - a[0], b[1] - a[1]
    norm = math.hypot(ux, uy)
    ux, uy = ux / norm, uy / norm
    nx, ny = -uy, ux  # left normal
    out: list[Point] = []
    for curl in sorted(curls, key=lambda c: c.frac):
        mx = a[0] + curl.frac * (b[0] - a[0])
        my = a[1] + curl.frac * (b[1] - a[1])
        pts = [
            (
                mx + curl.size * (x * ux + curl.side * y * nx),
                my + curl.size * (x * uy + curl.side * y * ny),
            )
            for x, y in _CURL
        ]
        i, j = _CURL_TOP
        inner = _expand(pts[i], pts[j], curl.children)
        out.extend(pts[: i + 1])
        out.extend(inner)
        out.extend(pts[j:])
    return out


def _side_for(delta_change: int) -> int:
    # bases below have orientation sign -1: poking right raises by 2
    return POKE_RIGHT if delta_change > 0 else POKE_LEFT


_G_BASE = (
    (0.0, 90.0),
    (30.0, 84.0),
    (78.0, 84.0),
    (90.0, 54.0),
    (90.0, -54.0),
    (45.0, -84.0),
    (0.0, -90.0),
)
_G_SHELF = 1  # segment (30,84) -> (78,84), travelled eastward


def g_curve(k: int) -> GeneratingCurve:
    """Curl-graft curve whose sphere has degree vector 2*e_1 - e_k.

    A chain of nested curls walks the degree ladder from 1 to k; two
    opposite curls per chain level walk it back down in pairs, leaving
    coefficient 2 at index 1 and -1 at index k.  Feature sizes stay above
    1e-2 for |k| <= 5; larger |k| shrinks geometrically.
    """
    _require_odd(k)
    if k == 1:
        return GeneratingCurve(_G_BASE)
    step = 2 if k > 0 else -2
    levels = abs(k - 1) // 2
    # build the chain deepest level first; every chain bubble carries its two
    # opposite curls, and the deeper chain sits on its top strand
    spec: tuple[_Curl, ...] = ()
    for _ in range(levels):
        children = (
            (_Curl(0.22, 0.15, _side_for(-step)),)
            + spec
            + (_Curl(0.78, 0.15, _side_for(-step)),)
        )
        spec = (_Curl(0.5, 0.2, _side_for(step), children),)
    return _graft_on_base(spec)


def _materialize(curls: tuple[_Curl, ...], parent_abs: float) -> tuple[_Curl, ...]:
    """Turn sizes relative to the hosting curl into absolute plane units."""
    out = []
    for c in curls:
        absolute = parent_abs * c.size
        out.append(_Curl(c.frac, absolute, c.side, _materialize(c.children, absolute)))
    return tuple(out)


def _graft_on_base(spec: tuple[_Curl, ...]) -> GeneratingCurve:
    outer = _materialize(spec, 18.0)
    a, b = _G_BASE[_G_SHELF], _G_BASE[_G_SHELF + 1]
    inserted = _expand(a, b, outer)
    pts = list(_G_BASE[: _G_SHELF + 1]) + inserted + list(_G_BASE[_G_SHELF + 1 :])
    return GeneratingCurve(tuple(pts))
