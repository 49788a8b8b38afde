"""Finite acyclic quivers of Dynkin type and their positive roots."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import StructuralError


@dataclass(frozen=True)
class Quiver:
    """Vertices ``0..vertex_count-1`` and arrows ``(source, target)``.

    Construction refuses cyclic quivers and quivers whose underlying graph is
    not a disjoint union of simply-laced Dynkin diagrams.
    """

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        n = self.vertex_count
        if n < 1:
            raise StructuralError("a quiver needs at least one vertex")
        for s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise StructuralError(f"arrow ({s},{t}) leaves the vertex range")
            if s == t:
                raise StructuralError("loops are not allowed")
        if self._topological_order() is None:
            raise StructuralError("quiver has an oriented cycle")
        if not _positive_definite(self.cartan_matrix()):
            raise StructuralError("underlying graph is not of Dynkin type A/D/E")

    @classmethod
    def linear_a(cls, n: int) -> "Quiver":
        """The linearly oriented A_n quiver ``0 -> 1 -> ... -> n-1``."""
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def d4(cls) -> "Quiver":
        """D_4 with centre 0 and all three arms pointing into it."""
        return cls(4, ((1, 0), (2, 0), (3, 0)))

    def _topological_order(self):
        indeg = [0] * self.vertex_count
        for _, t in self.arrows:
            indeg[t] += 1
        order, ready = [], [v for v in range(self.vertex_count) if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return order if len(order) == self.vertex_count else None

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(self._topological_order())

    def cartan_matrix(self) -> list[list[int]]:
        n = self.vertex_count
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for s, t in self.arrows:
            c[s][t] -= 1
            c[t][s] -= 1
        return c

    def tits_form(self, d) -> int:
        return sum(x * x for x in d) - sum(d[s] * d[t] for s, t in self.arrows)

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Dimension vectors of the indecomposables (Gabriel), via simple reflections."""
        n = self.vertex_count
        cartan = self.cartan_matrix()
        simple = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for root in frontier:
                for i in range(n):
                    pairing = sum(cartan[i][j] * root[j] for j in range(n))
                    image = tuple(root[j] - (pairing if j == i else 0) for j in range(n))
                    if all(x >= 0 for x in image) and any(image) and image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        return tuple(sorted(seen, key=lambda d: (sum(d), d)))

    def digest(self) -> str:
        text = f"{self.vertex_count}:{list(self.arrows)}"
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _positive_definite(mat: list[list[int]]) -> bool:
    """Sylvester's criterion with exact fractions."""
    n = len(mat)
    for k in range(1, n + 1):
        if _det([[Fraction(mat[i][j]) for j in range(k)] for i in range(k)]) <= 0:
            return False
    return True


def _det(a: list[list[Fraction]]) -> Fraction:
    n = len(a)
    a = [row[:] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det
