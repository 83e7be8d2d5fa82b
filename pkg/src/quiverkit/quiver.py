"""Quivers, their Euler and Kac forms, and the positive root test."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import UsageError

DimVector = Tuple[int, ...]


class QuiverError(UsageError):
    """Invalid quiver data or dimension vector."""


def _vec(x: Sequence[int], n: int, what: str = "dimension vector") -> DimVector:
    v = tuple(int(c) for c in x)
    if len(v) != n:
        raise QuiverError(f"{what} {list(v)} has length {len(v)}, quiver has {n} vertices")
    return v


@dataclass(frozen=True)
class Quiver:
    """A finite quiver on vertices ``0..n-1``; ``arrows[i][j]`` counts arrows i -> j."""

    arrows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.arrows)
        for i, row in enumerate(self.arrows):
            if len(row) != n:
                raise QuiverError(f"arrow matrix is not square: row {i} has length {len(row)}")
            for j, a in enumerate(row):
                if a < 0:
                    raise QuiverError(f"negative arrow multiplicity at entry ({i},{j})")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Quiver":
        return cls(tuple(tuple(int(a) for a in row) for row in matrix))

    @property
    def vertices(self) -> int:
        return len(self.arrows)

    def arrow_list(self) -> List[Tuple[int, int]]:
        """Arrows as (source, target) pairs, repeated by multiplicity."""
        return [
            (i, j)
            for i, row in enumerate(self.arrows)
            for j, a in enumerate(row)
            for _ in range(a)
        ]

    def vector(self, x: Sequence[int], what: str = "dimension vector") -> DimVector:
        return _vec(x, self.vertices, what)

    def zero(self) -> DimVector:
        return (0,) * self.vertices

    def unit(self, i: int) -> DimVector:
        return tuple(int(k == i) for k in range(self.vertices))

    def euler_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        d, e = self.vector(d), self.vector(e)
        n = self.vertices
        total = sum(d[i] * e[i] for i in range(n))
        for i in range(n):
            if d[i]:
                row = self.arrows[i]
                total -= d[i] * sum(row[j] * e[j] for j in range(n))
        return total

    def kac_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        return self.euler_form(d, e) + self.euler_form(e, d)

    def is_acyclic(self) -> bool:
        n = self.vertices
        indeg = [sum(1 for i in range(n) if self.arrows[i][j]) for j in range(n)]
        if any(self.arrows[i][i] for i in range(n)):
            return False
        ready = [j for j in range(n) if indeg[j] == 0]
        seen = 0
        while ready:
            i = ready.pop()
            seen += 1
            for j in range(n):
                if self.arrows[i][j]:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        ready.append(j)
        return seen == n

    def support(self, d: Sequence[int]) -> List[int]:
        return [i for i, x in enumerate(self.vector(d)) if x > 0]

    def support_connected(self, d: Sequence[int]) -> bool:
        supp = self.support(d)
        if not supp:
            return True
        inside = set(supp)
        reached = {supp[0]}
        stack = [supp[0]]
        while stack:
            i = stack.pop()
            for j in inside - reached:
                if self.arrows[i][j] or self.arrows[j][i]:
                    reached.add(j)
                    stack.append(j)
        return reached == inside

    def reflect(self, i: int, d: Sequence[int]) -> DimVector:
        """Simple reflection at a loop-free vertex: d - (d, e_i) e_i."""
        if self.arrows[i][i]:
            raise QuiverError(f"vertex {i} carries a loop; no simple reflection there")
        d = self.vector(d)
        c = self.kac_form(d, self.unit(i))
        return tuple(x - c if k == i else x for k, x in enumerate(d))

    def is_root(self, d: Sequence[int]) -> bool:
        """Whether ``d`` is a positive root of the Kac root system."""
        d = self.vector(d)
        if any(x < 0 for x in d):
            raise QuiverError("is_root expects a nonnegative dimension vector")
        if not any(d):
            raise QuiverError("the zero vector is not a root")
        n = self.vertices
        while True:
            if sum(d) == 1:
                return True
            for i in range(n):
                if self.arrows[i][i] == 0 and d[i] > 0 and self.kac_form(d, self.unit(i)) > 0:
                    d = self.reflect(i, d)
                    if d[i] < 0:
                        return False
                    if not any(d):
                        return False
                    break
            else:
                # fundamental region; (d, e_i) <= 0 holds off the support trivially
                return self.support_connected(d)

    def to_json(self) -> str:
        return json.dumps({"vertices": self.vertices, "arrows": [list(r) for r in self.arrows]})


def euler_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    return Q.euler_form(d, e)


def kac_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    return Q.kac_form(d, e)


def make_kronecker(m: int) -> Quiver:
    if m < 0:
        raise QuiverError("arrow multiplicity must be nonnegative")
    return Quiver(((0, m), (0, 0)))


def make_three_vertex(m12: int, m13: int, m23: int) -> Quiver:
    """Vertices 0, 1, 2 with m12 arrows 0->1, m13 arrows 0->2 and m23 arrows 1->2."""
    if min(m12, m13, m23) < 0:
        raise QuiverError("arrow multiplicity must be nonnegative")
    return Quiver(((0, m12, m13), (0, 0, m23), (0, 0, 0)))


def make_from_matrix(matrix: Sequence[Sequence[int]]) -> Quiver:
    return Quiver.from_matrix(matrix)


def make_loop_quiver(loops: int) -> Quiver:
    return Quiver(((loops,),))


def make_disjoint(n: int) -> Quiver:
    """n vertices and no arrows."""
    return Quiver(tuple((0,) * n for _ in range(n)))


def quiver_from_document(doc) -> Quiver:
    """Validate a ``{"vertices": n, "arrows": [[...], ...]}`` document."""
    if not isinstance(doc, dict):
        raise QuiverError("quiver document must be a JSON object")
    unknown = set(doc) - {"vertices", "arrows"}
    if unknown:
        raise QuiverError(f"unknown field(s) in quiver document: {', '.join(sorted(unknown))}")
    for key in ("vertices", "arrows"):
        if key not in doc:
            raise QuiverError(f"quiver document is missing field '{key}'")
    n = doc["vertices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise QuiverError("field 'vertices' must be a nonnegative integer")
    rows = doc["arrows"]
    if not isinstance(rows, list) or len(rows) != n:
        raise QuiverError(f"field 'arrows' must be a list of {n} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise QuiverError(f"field 'arrows' row {i} must have {n} entries (matrix must be square)")
        for j, a in enumerate(row):
            if not isinstance(a, int) or isinstance(a, bool):
                raise QuiverError(f"field 'arrows' entry ({i},{j}) is not an integer")
            if a < 0:
                raise QuiverError(f"field 'arrows' entry ({i},{j}) is negative")
    return Quiver.from_matrix(rows)
