"""General subdimension vectors, general hom/ext and canonical decompositions.

Everything here rests on Schofield's recursive criterion: e is a general
subdimension vector of d (written e -> d) iff <e', d - e> >= 0 for every
general subdimension vector e' of e.  The recursion is run once over the
whole lattice {e : 0 <= e <= d}, smallest total dimension first.
"""

from __future__ import annotations

import random
from typing import Dict, List, Sequence, Tuple

from .exactmath import integer_rank, subvectors
from .quiver import DimVector, Quiver, QuiverError


def _sub(a: Sequence[int], b: Sequence[int]) -> DimVector:
    return tuple(x - y for x, y in zip(a, b))


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


class SubdimensionLattice:
    """General subdimension vectors of every e <= d, computed in one sweep."""

    def __init__(self, Q: Quiver, d: Sequence[int]):
        d = Q.vector(d)
        if any(x < 0 for x in d):
            raise QuiverError("dimension vectors must be nonnegative")
        self.quiver = Q
        self.top = d
        self._table: Dict[DimVector, List[DimVector]] = {}
        e_list = sorted(subvectors(d), key=lambda e: (sum(e), e))
        zero = Q.zero()
        for e in e_list:
            general = []
            for f in subvectors(e):
                if f == zero or f == e:
                    general.append(f)
                    continue
                rest = _sub(e, f)
                if all(Q.euler_form(g, rest) >= 0 for g in self._table[f]):
                    general.append(f)
            self._table[e] = general

    def general_subdimensions(self, e: Sequence[int]) -> List[DimVector]:
        e = tuple(e)
        if e not in self._table:
            raise QuiverError(f"{list(e)} is not below {list(self.top)}")
        return self._table[e]

    def is_general_subdim(self, e: Sequence[int], d: Sequence[int]) -> bool:
        e, d = tuple(e), tuple(d)
        if not _leq(e, d) or any(x < 0 for x in e):
            raise QuiverError(f"{list(e)} is not a subdimension vector of {list(d)}")
        return e in set(self.general_subdimensions(d))

    def general_ext(self, d: Sequence[int], d2: Sequence[int]) -> int:
        """max over e -> d of -<e, d2>; only needs d <= top."""
        return max(-self.quiver.euler_form(e, d2) for e in self.general_subdimensions(d))

    def general_hom(self, d: Sequence[int], d2: Sequence[int]) -> int:
        return self.quiver.euler_form(d, d2) + self.general_ext(d, d2)

    def canonical_decomposition(self, d: Sequence[int]) -> Tuple[DimVector, ...]:
        d = tuple(d)
        if not any(d):
            raise QuiverError("the zero vector has no canonical decomposition")

        def split(v: DimVector) -> List[DimVector]:
            for e in self.general_subdimensions(v):
                if not any(e) or e == v:
                    continue
                # e -> v already gives ext(e, v - e) = 0
                if self.general_ext(_sub(v, e), e) == 0:
                    return split(e) + split(_sub(v, e))
            return [v]

        return tuple(sorted(split(d)))


def all_general_subdimension_vectors(Q: Quiver, d: Sequence[int]) -> List[DimVector]:
    return list(SubdimensionLattice(Q, d).general_subdimensions(Q.vector(d)))


def is_general_subdim(Q: Quiver, e: Sequence[int], d: Sequence[int]) -> bool:
    e, d = Q.vector(e), Q.vector(d)
    if not _leq(e, d) or any(x < 0 for x in e):
        raise QuiverError(f"{list(e)} is not a subdimension vector of {list(d)}")
    return SubdimensionLattice(Q, d).is_general_subdim(e, d)


def general_ext(Q: Quiver, d: Sequence[int], d2: Sequence[int]) -> int:
    d, d2 = Q.vector(d), Q.vector(d2)
    return SubdimensionLattice(Q, d).general_ext(d, d2)


def general_hom(Q: Quiver, d: Sequence[int], d2: Sequence[int]) -> int:
    d, d2 = Q.vector(d), Q.vector(d2)
    return SubdimensionLattice(Q, d).general_hom(d, d2)


def canonical_decomposition(Q: Quiver, d: Sequence[int]) -> Tuple[DimVector, ...]:
    d = Q.vector(d)
    return SubdimensionLattice(Q, d).canonical_decomposition(d)


def is_schur_root(Q: Quiver, d: Sequence[int]) -> bool:
    d = Q.vector(d)
    return canonical_decomposition(Q, d) == (d,)


def _random_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> List[List[int]]:
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def sampled_ext_oracle(
    Q: Quiver,
    d: Sequence[int],
    d2: Sequence[int],
    trials: int = 50,
    seed: int = 0,
    bound: int = 10,
) -> int:
    """Smallest dim Ext(V, W) seen over random integer representations.

    dim Ext(V, W) is read off the four-term sequence as the cokernel
    dimension of  (phi_i) -> (W_a phi_s(a) - phi_t(a) V_a)_a.  The result is an
    upper bound for the general ext which is attained for generic samples.
    """
    if trials < 1:
        raise ValueError("at least one trial is needed")
    d, d2 = Q.vector(d), Q.vector(d2)
    arrows = Q.arrow_list()
    n = Q.vertices
    target_dim = sum(d[i] * d2[j] for i, j in arrows)
    if target_dim == 0:
        return 0
    # ext >= max(0, -<d, d2>) always, so reaching it ends the search
    floor = max(0, -Q.euler_form(d, d2))

    offset = []
    pos = 0
    for i in range(n):
        offset.append(pos)
        pos += d2[i] * d[i]
    ncols = pos

    def var(i: int, r: int, c: int) -> int:
        # entry (r, c) of phi_i, a d2[i] x d[i] matrix
        return offset[i] + r * d[i] + c

    rng = random.Random(seed)
    best = target_dim
    for _ in range(trials):
        rows = []
        for i, j in arrows:
            V = _random_matrix(rng, d[j], d[i], bound)
            W = _random_matrix(rng, d2[j], d2[i], bound)
            for r in range(d2[j]):
                for c in range(d[i]):
                    row = [0] * ncols
                    for k in range(d2[i]):
                        row[var(i, k, c)] += W[r][k]
                    for k in range(d[j]):
                        row[var(j, r, k)] -= V[k][c]
                    rows.append(row)
        ext = target_dim - integer_rank(rows)
        best = min(best, ext)
        if best <= floor:
            break
    return best
