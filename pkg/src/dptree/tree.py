"""Double point trees: directed trees with paired edges and vertex degrees.

A double point tree couples three layers of structure on a finite tree: a
direction on every edge, a fixed-point-free involution ("pairing") matching
the edges in conjugate pairs, and an odd integer degree attached to every
vertex.  ``validate`` checks the structural laws tying the layers together;
everything else here (negation, connected sum) is a pure function returning a
new tree, so values can be shared freely between workers.

Vertices and edges carry opaque string ids for interchange.  Internally all
algorithms run on dense integer indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InputError, InvalidTreeError, PreconditionError

__all__ = [
    "DoublePointTree",
    "ValidationReport",
    "Violation",
    "RelabelMap",
    "validate",
    "negate",
    "indegree",
    "connected_sum",
]


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


@dataclass(frozen=True)
class RelabelMap:
    vertices: dict[str, str]
    edges: dict[str, str]


class DoublePointTree:
    """Immutable directed tree with edge pairing and integer vertex degrees.

    Use :meth:`build` to construct from interchange-level data; the raw
    constructor takes dense index arrays and performs no checking beyond
    id uniqueness.
    """

    __slots__ = (
        "vertex_ids",
        "deltas",
        "edge_ids",
        "tails",
        "heads",
        "pairing",
        "_vindex",
        "_eindex",
        "_incidence",
    )

    def __init__(
        self,
        vertex_ids: tuple[str, ...],
        deltas: tuple[int, ...],
        edge_ids: tuple[str, ...],
        tails: tuple[int, ...],
        heads: tuple[int, ...],
        pairing: tuple[Optional[int], ...],
    ):
        self.vertex_ids = vertex_ids
        self.deltas = deltas
        self.edge_ids = edge_ids
        self.tails = tails
        self.heads = heads
        self.pairing = pairing
        vindex = {}
        for i, v in enumerate(vertex_ids):
            if v in vindex:
                raise InputError(f"duplicate vertex id {v!r}")
            vindex[v] = i
        eindex = {}
        for i, e in enumerate(edge_ids):
            if e in eindex:
                raise InputError(f"duplicate edge id {e!r}")
            if e in vindex:
                pass  # vertex and edge namespaces are independent
            eindex[e] = i
        self._vindex = vindex
        self._eindex = eindex
        incidence: list[list[int]] = [[] for _ in vertex_ids]
        for i, (t, h) in enumerate(zip(tails, heads)):
            incidence[t].append(i)
            if h != t:
                incidence[h].append(i)
        self._incidence = tuple(tuple(xs) for xs in incidence)

    # -- construction ------------------------------------------------------

    @staticmethod
    def build(
        vertices: Iterable[tuple[str, int]],
        edges: Iterable[tuple[str, str, str]],
        pairing: Iterable[tuple[str, str]],
    ) -> "DoublePointTree":
        """Build from (id, delta) vertices, (id, tail, head) edges and
        unordered id pairs.  Raises :class:`InputError` when ids do not
        resolve or the pairing maps an edge twice."""
        vlist = list(vertices)
        vertex_ids = tuple(v for v, _ in vlist)
        deltas_raw = [d for _, d in vlist]
        for v, d in vlist:
            if not isinstance(d, int) or isinstance(d, bool):
                raise InputError(f"delta of vertex {v!r} must be an integer")
        elist = list(edges)
        edge_ids = tuple(e for e, _, _ in elist)
        vindex = {}
        for i, v in enumerate(vertex_ids):
            if v in vindex:
                raise InputError(f"duplicate vertex id {v!r}")
            vindex[v] = i
        eindex = {}
        for i, e in enumerate(edge_ids):
            if e in eindex:
                raise InputError(f"duplicate edge id {e!r}")
            eindex[e] = i
        tails = []
        heads = []
        for e, t, h in elist:
            if t not in vindex:
                raise InputError(f"edge {e!r}: unknown tail vertex {t!r}")
            if h not in vindex:
                raise InputError(f"edge {e!r}: unknown head vertex {h!r}")
            tails.append(vindex[t])
            heads.append(vindex[h])
        partner: list[Optional[int]] = [None] * len(elist)
        for pair in pairing:
            if len(pair) != 2:
                raise InputError(f"pairing entry {pair!r} is not a pair")
            a, b = pair
            if a not in eindex or b not in eindex:
                raise InputError(f"pairing references unknown edge in {pair!r}")
            ia, ib = eindex[a], eindex[b]
            for i in (ia, ib):
                if partner[i] is not None and partner[i] != (ib if i == ia else ia):
                    raise InputError(f"edge {edge_ids[i]!r} paired more than once")
            partner[ia] = ib
            partner[ib] = ia
        return DoublePointTree(
            vertex_ids,
            tuple(deltas_raw),
            edge_ids,
            tuple(tails),
            tuple(heads),
            tuple(partner),
        )

    # -- basic queries -------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_ids)

    @property
    def edge_count(self) -> int:
        return len(self.edge_ids)

    def vertex_index(self, vid: str) -> int:
        try:
            return self._vindex[vid]
        except KeyError:
            raise InputError(f"unknown vertex id {vid!r}") from None

    def edge_index(self, eid: str) -> int:
        try:
            return self._eindex[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid!r}") from None

    def delta_of(self, vid: str) -> int:
        return self.deltas[self.vertex_index(vid)]

    def edges_at(self, vid: str) -> tuple[str, ...]:
        return tuple(self.edge_ids[i] for i in self._incidence[self.vertex_index(vid)])

    def incidence(self, vi: int) -> tuple[int, ...]:
        return self._incidence[vi]

    def partner_of(self, eid: str) -> Optional[str]:
        p = self.pairing[self.edge_index(eid)]
        return None if p is None else self.edge_ids[p]

    def endpoints(self, eid: str) -> tuple[str, str]:
        i = self.edge_index(eid)
        return self.vertex_ids[self.tails[i]], self.vertex_ids[self.heads[i]]

    def indegrees(self) -> tuple[int, ...]:
        indeg = [0] * self.vertex_count
        for h in self.heads:
            indeg[h] += 1
        return tuple(indeg)

    # -- component helper ----------------------------------------------------

    def side_of(self, edge: int, start: int) -> set[int]:
        """Vertex indices reachable from ``start`` without crossing ``edge``.

        Meaningful on trees; on general graphs it is just the reachable set.
        """
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for e in self._incidence[v]:
                if e == edge:
                    continue
                for w in (self.tails[e], self.heads[e]):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return seen

    def __repr__(self) -> str:  # short, for debugging only
        return f"DoublePointTree(|V|={self.vertex_count}, |E|={self.edge_count})"


def validate(tree: DoublePointTree) -> ValidationReport:
    """Check every structural invariant; report all violations with witnesses.

    Rules reported: connected, acyclic, pairing_covers, pairing_involution,
    pairing_fixed_point_free, delta_odd, delta_step, edge_orientation.  The
    orientation rule is only evaluated once the underlying graph is a tree
    and the relevant edges are paired.
    """
    violations: list[Violation] = []
    n = tree.vertex_count
    m = tree.edge_count

    # connectivity (vertex 0 as root; the empty tree cannot be represented)
    if n == 0:
        return ValidationReport(False, (Violation("connected", ()),))
    seen = tree.side_of(-1, 0)
    if len(seen) < n:
        missing = min(v for v in range(n) if v not in seen)
        violations.append(Violation("connected", (tree.vertex_ids[missing],)))

    # acyclicity: a connected graph is a tree iff m == n - 1; with several
    # components compare against the forest bound.
    components = 1
    remaining = set(range(n)) - seen
    while remaining:
        components += 1
        start = min(remaining)
        remaining -= tree.side_of(-1, start)
    if m > n - components:
        violations.append(Violation("acyclic", ()))

    for i in range(m):
        p = tree.pairing[i]
        if p is None:
            violations.append(Violation("pairing_covers", (tree.edge_ids[i],)))
        else:
            if tree.pairing[p] != i:
                violations.append(Violation("pairing_involution", (tree.edge_ids[i],)))
            if p == i:
                violations.append(Violation("pairing_fixed_point_free", (tree.edge_ids[i],)))

    for v in range(n):
        if tree.deltas[v] % 2 == 0:
            violations.append(Violation("delta_odd", (tree.vertex_ids[v],)))

    for i in range(m):
        if abs(tree.deltas[tree.tails[i]] - tree.deltas[tree.heads[i]]) != 2:
            violations.append(Violation("delta_step", (tree.edge_ids[i],)))

    is_tree_shaped = not any(v.rule in ("connected", "acyclic") for v in violations)
    if is_tree_shaped:
        for i in range(m):
            p = tree.pairing[i]
            if p is None or p == i or tree.pairing[p] != i:
                continue
            tail_side = tree.side_of(i, tree.tails[i])
            if tree.tails[p] not in tail_side or tree.heads[p] not in tail_side:
                violations.append(Violation("edge_orientation", (tree.edge_ids[i],)))

    return ValidationReport(not violations, tuple(violations))


def require_valid(tree: DoublePointTree) -> None:
    report = validate(tree)
    if not report.ok:
        rules = ", ".join(sorted(report.rules()))
        raise InvalidTreeError(f"tree is not valid ({rules})", report)


def negate(tree: DoublePointTree) -> DoublePointTree:
    """Flip the sign of every vertex degree.  Involutive; preserves validity."""
    return DoublePointTree(
        tree.vertex_ids,
        tuple(-d for d in tree.deltas),
        tree.edge_ids,
        tree.tails,
        tree.heads,
        tree.pairing,
    )


def indegree(tree: DoublePointTree, vid: str) -> int:
    """Number of edges pointing into ``vid``."""
    vi = tree.vertex_index(vid)
    return sum(1 for h in tree.heads if h == vi)


def _fresh_prefix(taken: set[str]) -> str:
    n = 2
    while any(t.startswith(f"b{n}.") for t in taken):
        n += 1
    return f"b{n}."


def connected_sum(
    t1: DoublePointTree,
    v1: str,
    t2: DoublePointTree,
    v2: str,
) -> tuple[DoublePointTree, RelabelMap]:
    """Glue two valid trees by identifying degree-1 vertices ``v1`` and ``v2``.

    The merged vertex keeps ``t1``'s id; every id of ``t2`` is freshly
    relabelled (scheme returned in the map).  Pairings of both halves are kept
    untouched, so the result is again valid.
    """
    require_valid(t1)
    require_valid(t2)
    if t1.delta_of(v1) != 1:
        raise PreconditionError(f"merge vertex {v1!r} must have delta 1")
    if t2.delta_of(v2) != 1:
        raise PreconditionError(f"merge vertex {v2!r} must have delta 1")

    taken = set(t1.vertex_ids) | set(t1.edge_ids)
    prefix = _fresh_prefix(taken)
    vmap = {v: (v1 if v == v2 else prefix + v) for v in t2.vertex_ids}
    emap = {e: prefix + e for e in t2.edge_ids}

    vertices = [(v, d) for v, d in zip(t1.vertex_ids, t1.deltas)]
    vertices += [
        (vmap[v], d) for v, d in zip(t2.vertex_ids, t2.deltas) if v != v2
    ]
    edges = [
        (e, t1.vertex_ids[t], t1.vertex_ids[h])
        for e, t, h in zip(t1.edge_ids, t1.tails, t1.heads)
    ]
    edges += [
        (emap[e], vmap[t2.vertex_ids[t]], vmap[t2.vertex_ids[h]])
        for e, t, h in zip(t2.edge_ids, t2.tails, t2.heads)
    ]
    pairs = []
    for i, p in enumerate(t1.pairing):
        if p is not None and i < p:
            pairs.append((t1.edge_ids[i], t1.edge_ids[p]))
    for i, p in enumerate(t2.pairing):
        if p is not None and i < p:
            pairs.append((emap[t2.edge_ids[i]], emap[t2.edge_ids[p]]))

    summed = DoublePointTree.build(vertices, edges, pairs)
    return summed, RelabelMap(vertices=vmap, edges=emap)
