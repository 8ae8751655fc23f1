"""Finitely supported integer vectors indexed by integers.

The vector attached to a tree counts, for each degree value k, the quantity
1 - indegree over all vertices of degree k.  Arithmetic is exact (Python
integers), the sparse form is canonical (no stored zeros), and values render
as a stable sorted text form like ``-1:2 3:1``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import InputError
from .tree import DoublePointTree, require_valid

__all__ = [
    "InvariantVector",
    "zero",
    "basis",
    "add",
    "subtract",
    "scale",
    "reverse",
    "invariant_of",
    "in_image",
]


class InvariantVector:
    """Sparse map from integer index to nonzero integer coefficient."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        d: dict[int, int] = {}
        for k, c in items:
            if not isinstance(k, int) or not isinstance(c, int):
                raise InputError("coefficients must map int -> int")
            if c != 0:
                d[k] = d.get(k, 0) + c
                if d[k] == 0:
                    del d[k]
        self._coeffs = d

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coefficient(self, k: int) -> int:
        return self._coeffs.get(k, 0)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def total(self) -> int:
        return sum(self._coeffs.values())

    def l1(self) -> int:
        return sum(abs(c) for c in self._coeffs.values())

    def is_zero(self) -> bool:
        return not self._coeffs

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._coeffs.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, InvariantVector) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"InvariantVector({self.render()!r})"

    def render(self) -> str:
        """Sorted textual form, e.g. ``-1:2 3:1``; empty vector renders as ``0``."""
        if not self._coeffs:
            return "0"
        return " ".join(f"{k}:{c}" for k, c in self.items())

    @staticmethod
    def parse(text: str) -> "InvariantVector":
        text = text.strip()
        if text in ("", "0"):
            return InvariantVector()
        pairs = []
        for token in text.split():
            try:
                k, c = token.rsplit(":", 1)
                pairs.append((int(k), int(c)))
            except ValueError:
                raise InputError(f"bad coefficient token {token!r}") from None
        return InvariantVector(pairs)


def zero() -> InvariantVector:
    return InvariantVector()


def basis(k: int) -> InvariantVector:
    return InvariantVector({k: 1})


def add(a: InvariantVector, b: InvariantVector) -> InvariantVector:
    d = a.coefficients
    for k, c in b.items():
        d[k] = d.get(k, 0) + c
    return InvariantVector(d)


def subtract(a: InvariantVector, b: InvariantVector) -> InvariantVector:
    return add(a, scale(b, -1))


def scale(a: InvariantVector, n: int) -> InvariantVector:
    return InvariantVector({k: n * c for k, c in a.items()})


def reverse(a: InvariantVector) -> InvariantVector:
    """Move the coefficient at k to -k."""
    return InvariantVector({-k: c for k, c in a.items()})


def invariant_of(tree: DoublePointTree, check: bool = True) -> InvariantVector:
    """Sum 1 - indegree(v) over the vertices of each degree class.

    ``check=False`` skips revalidation for callers that already hold a
    validated tree (hot enumeration loops).
    """
    if check:
        require_valid(tree)
    indeg = tree.indegrees()
    acc: dict[int, int] = {}
    for v in range(tree.vertex_count):
        k = tree.deltas[v]
        acc[k] = acc.get(k, 0) + 1 - indeg[v]
    return InvariantVector(acc)


def in_image(vec: InvariantVector) -> bool:
    """Membership in the attainable set: odd support and coefficient sum 1."""
    return all(k % 2 != 0 for k in vec.support()) and vec.total() == 1
