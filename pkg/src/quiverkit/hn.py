"""Harder-Narasimhan types, stratum codimensions and Betti numbers.

Betti numbers come from counting over finite fields.  With
``g_d = |R(Q, d)| / |GL_d|`` every representation has exactly one HN type, so

    g_d = sum over HN types (d^1, ..., d^s) of
          prod_{k<l} q^(-<d^l, d^k>) * prod_k g^sst_{d^k}

which is solved for ``g^sst_d`` recursively.  In the coprime case
``(q - 1) g^sst_d`` is the Poincare polynomial of the moduli space in q = t^2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConsistencyError, UnsupportedRegimeError
from .exactmath import RationalFunction, UniPoly, q_power, subvectors
from .quiver import DimVector, Quiver, QuiverError
from .schofield import SubdimensionLattice
from .stability import Stability, has_semistables, is_theta_coprime

HNType = Tuple[DimVector, ...]


def _check(Q: Quiver, d: Sequence[int], s: Stability) -> DimVector:
    d = Q.vector(d)
    if len(s.theta) != Q.vertices:
        raise QuiverError("stability parameter length does not match the quiver")
    if any(x < 0 for x in d) or not any(d):
        raise QuiverError("a nonzero nonnegative dimension vector is required")
    return d


class HNSystem:
    """HN data for one quiver, stability and ambient dimension vector.

    Semistability of sub-blocks and the HN types of every e <= d are cached on
    the instance, so one object serves a whole family of queries.
    """

    def __init__(self, Q: Quiver, d: Sequence[int], s: Stability,
                 lattice: Optional[SubdimensionLattice] = None):
        self.quiver = Q
        self.d = _check(Q, d, s)
        self.stability = s
        self.lattice = lattice or SubdimensionLattice(Q, self.d)
        self._sst: Dict[DimVector, bool] = {}
        self._types: Dict[DimVector, List[HNType]] = {}
        self._gsst: Dict[DimVector, RationalFunction] = {}

    def slope(self, e: Sequence[int]) -> Fraction:
        return self.stability.slope(e)

    def semistable(self, e: DimVector) -> bool:
        if e not in self._sst:
            self._sst[e] = has_semistables(self.quiver, e, self.stability, self.lattice)
        return self._sst[e]

    def types(self, v: Optional[DimVector] = None) -> List[HNType]:
        """All HN types of v (default: the ambient d), trivial type first."""
        v = self.d if v is None else tuple(v)
        if v in self._types:
            return self._types[v]
        out: List[HNType] = []
        if self.semistable(v):
            out.append((v,))
        mu = self.slope(v)
        # the leading block of a nontrivial type has slope above the total slope
        firsts = [
            e for e in subvectors(v)
            if any(e) and e != v and self.slope(e) > mu and self.semistable(e)
        ]
        firsts.sort(key=self.slope)
        for e in firsts:
            mu_e = self.slope(e)
            rest = tuple(x - y for x, y in zip(v, e))
            for tail in self.types(rest):
                if self.slope(tail[0]) < mu_e:
                    out.append((e,) + tail)
        self._types[v] = out
        return out

    def proper_types(self) -> List[HNType]:
        return [t for t in self.types() if len(t) > 1]

    def codim(self, t: HNType) -> int:
        return codim_stratum(self.quiver, t)

    def is_amply_stable(self) -> bool:
        return all(self.codim(t) >= 2 for t in self.proper_types())

    def sst_count(self, v: Optional[DimVector] = None) -> RationalFunction:
        v = self.d if v is None else tuple(v)
        if v in self._gsst:
            return self._gsst[v]
        if not self.semistable(v):
            result = RationalFunction(0)
        else:
            result = stack_count(self.quiver, v)
            for t in self.types(v):
                if len(t) > 1:
                    result = result - self.type_contribution(t)
        self._gsst[v] = result
        return result

    def type_contribution(self, t: HNType) -> RationalFunction:
        Q = self.quiver
        exponent = -sum(
            Q.euler_form(t[l], t[k]) for k in range(len(t)) for l in range(k + 1, len(t))
        )
        term = q_power(exponent)
        for block in t:
            term = term * self.sst_count(block)
        return term


def all_hn_types(Q: Quiver, d: Sequence[int], s: Stability, proper: bool = False) -> List[HNType]:
    system = HNSystem(Q, d, s)
    return system.proper_types() if proper else list(system.types())


def codim_stratum(Q: Quiver, t: Sequence[Sequence[int]]) -> int:
    return -sum(
        Q.euler_form(t[k], t[l]) for k in range(len(t)) for l in range(k + 1, len(t))
    )


def is_amply_stable(Q: Quiver, d: Sequence[int], s: Stability) -> bool:
    return HNSystem(Q, d, s).is_amply_stable()


def rep_count(Q: Quiver, d: Sequence[int]) -> UniPoly:
    d = Q.vector(d)
    return UniPoly.monomial(sum(d[i] * d[j] for i, j in Q.arrow_list()))


def gl_count(d: Sequence[int]) -> UniPoly:
    result = UniPoly((1,))
    for n in d:
        for k in range(n):
            result = result * (UniPoly.monomial(n) - UniPoly.monomial(k))
    return result


def stack_count(Q: Quiver, d: Sequence[int]) -> RationalFunction:
    return RationalFunction(rep_count(Q, d), gl_count(d))


def sst_stack_count(Q: Quiver, d: Sequence[int], s: Stability) -> RationalFunction:
    return HNSystem(Q, d, s).sst_count()


def poincare_polynomial(Q: Quiver, d: Sequence[int], s: Stability,
                        system: Optional[HNSystem] = None) -> UniPoly:
    d = _check(Q, d, s)
    if not is_theta_coprime(Q, d, s):
        raise UnsupportedRegimeError(f"{list(d)} is not coprime for theta={list(s.theta)}")
    system = system or HNSystem(Q, d, s)
    g = system.sst_count() * RationalFunction(UniPoly((-1, 1)))
    if not g.is_polynomial():
        raise ConsistencyError(f"(q-1) * g_sst = {g} is not a polynomial")
    P = g.as_polynomial()
    for c in P.coeffs:
        if isinstance(c, Fraction) or c < 0:
            raise ConsistencyError(f"Poincare polynomial {P} has a coefficient outside N")
    return P


def betti_numbers(Q: Quiver, d: Sequence[int], s: Stability,
                  system: Optional[HNSystem] = None) -> List[int]:
    """b_0, ..., b_{2N}; odd entries are zero."""
    P = poincare_polynomial(Q, d, s, system)
    if P.is_zero():
        return []
    out = [0] * (2 * P.degree + 1)
    for i, c in enumerate(P.coeffs):
        out[2 * i] = c
    return out
