"""Teleman quantization data for the HN stratification of Rep(Q, d).

Each unstable stratum is governed by the one-parameter subgroup acting with
weight m_k on the k-th HN block, where (m_1, ..., m_s) is the primitive integer
vector on the ray of the slope tuple.  From it one reads off the bound
eta (weight on the determinant of the conormal bundle) and the weights of
equivariant bundles restricted to the fixed locus.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .errors import UsageError
from .hn import HNSystem, HNType
from .quiver import DimVector, Quiver
from .stability import Stability, canonical_stability


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _total(t: HNType) -> DimVector:
    return tuple(sum(col) for col in zip(*t))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def ops_weights(s: Stability, t: HNType) -> Tuple[int, ...]:
    """Primitive integer weights (m_1 > ... > m_s) proportional to the block slopes."""
    if not t:
        raise UsageError("an HN type needs at least one block")
    if len(t) == 1:
        return (0,)
    slopes = [s.slope(block) for block in t]
    den = 1
    for mu in slopes:
        den = _lcm(den, mu.denominator)
    m = [int(mu * den) for mu in slopes]
    g = 0
    for x in m:
        g = gcd(g, x)
    if g == 0:
        return tuple(m)
    return tuple(x // g for x in m)


def teleman_bound(Q: Quiver, s: Stability, t: HNType) -> int:
    if len(t) < 2:
        raise UsageError("the Teleman bound is only defined for proper HN types")
    m = ops_weights(s, t)
    return sum(
        (m[k] - m[l]) * -Q.euler_form(t[k], t[l])
        for k in range(len(t))
        for l in range(k + 1, len(t))
    )


def _character_weight(m: Sequence[int], t: HNType, character: Sequence[int]) -> int:
    return sum(mk * _dot(character, block) for mk, block in zip(m, t))


def weights_universal_bundle(Q: Quiver, s: Stability, i: int, chi: Sequence[int], t: HNType) -> List[int]:
    chi = Q.vector(chi, "linearisation chi")
    if not 0 <= i < Q.vertices:
        raise UsageError(f"vertex {i} does not exist")
    if _dot(chi, _total(t)) != 1:
        raise UsageError("chi . d must equal 1 for a universal family to exist")
    m = ops_weights(s, t)
    shift = _character_weight(m, t, chi)
    out: List[int] = []
    for mk, block in zip(m, t):
        out.extend([mk - shift] * block[i])
    return out


def weights_endomorphism_bundle(Q: Quiver, s: Stability, i: int, j: int, t: HNType) -> List[int]:
    """Weights of U_i^v (x) U_j: m_l - m_k with multiplicity d^k_i * d^l_j."""
    for v in (i, j):
        if not 0 <= v < Q.vertices:
            raise UsageError(f"vertex {v} does not exist")
    m = ops_weights(s, t)
    out: List[int] = []
    for mk, bk in zip(m, t):
        for ml, bl in zip(m, t):
            out.extend([ml - mk] * (bk[i] * bl[j]))
    return out


def weights_line_bundle(Q: Quiver, s: Stability, character: Sequence[int], t: HNType) -> int:
    character = Q.vector(character, "character")
    return _character_weight(ops_weights(s, t), t, character)


def weights_canonical(Q: Quiver, s: Stability, t: HNType) -> int:
    return weights_line_bundle(Q, s, canonical_stability(Q, _total(t)), t)


@dataclass(frozen=True)
class BundleSpec:
    """One of ``universal(i)``, ``endo(i, j)``, ``line(character)``, ``canonical``."""

    kind: str
    vertices: Tuple[int, ...] = ()
    character: Tuple[int, ...] = ()

    @classmethod
    def universal(cls, i: int) -> "BundleSpec":
        return cls("universal", (i,))

    @classmethod
    def endo(cls, i: int, j: int) -> "BundleSpec":
        return cls("endo", (i, j))

    @classmethod
    def line(cls, character: Sequence[int]) -> "BundleSpec":
        return cls("line", (), tuple(character))

    @classmethod
    def canonical(cls) -> "BundleSpec":
        return cls("canonical")

    @classmethod
    def parse(cls, text: str) -> "BundleSpec":
        """``universal:0``, ``endo:0,1``, ``line:3,-2`` or ``canonical``."""
        kind, _, arg = text.partition(":")
        try:
            nums = tuple(int(x) for x in arg.split(",")) if arg else ()
        except ValueError:
            raise UsageError(f"cannot parse bundle '{text}'") from None
        if kind == "universal" and len(nums) == 1:
            return cls.universal(nums[0])
        if kind == "endo" and len(nums) == 2:
            return cls.endo(*nums)
        if kind == "line" and nums:
            return cls.line(nums)
        if kind == "canonical" and not arg:
            return cls.canonical()
        raise UsageError(f"cannot parse bundle '{text}'")

    def __str__(self) -> str:
        if self.kind == "canonical":
            return "canonical"
        nums = self.vertices if self.kind != "line" else self.character
        return f"{self.kind}:{','.join(map(str, nums))}"

    def weights(self, Q: Quiver, s: Stability, t: HNType, chi: Optional[Sequence[int]] = None) -> List[int]:
        if self.kind == "universal":
            if chi is None:
                raise UsageError("weights of a universal bundle need an explicit chi")
            return weights_universal_bundle(Q, s, self.vertices[0], chi, t)
        if self.kind == "endo":
            return weights_endomorphism_bundle(Q, s, self.vertices[0], self.vertices[1], t)
        if self.kind == "line":
            return [weights_line_bundle(Q, s, self.character, t)]
        if self.kind == "canonical":
            return [weights_canonical(Q, s, t)]
        raise UsageError(f"unknown bundle kind '{self.kind}'")


@dataclass(frozen=True)
class StratumCheck:
    hn_type: HNType
    max_weight: Optional[int]  # None when the bundle has rank 0 on the stratum
    eta: int

    @property
    def ok(self) -> bool:
        return self.max_weight is None or self.max_weight < self.eta


def quantization_verdict(
    Q: Quiver,
    d: Sequence[int],
    s: Stability,
    bundle: BundleSpec,
    chi: Optional[Sequence[int]] = None,
    system: Optional[HNSystem] = None,
) -> Tuple[List[StratumCheck], bool]:
    """Compare max weight against eta on every unstable stratum.

    When every row passes, the higher cohomology of the descended bundle on
    the moduli space vanishes.
    """
    system = system or HNSystem(Q, d, s)
    rows = []
    for t in system.proper_types():
        w = bundle.weights(Q, s, t, chi)
        rows.append(StratumCheck(t, max(w) if w else None, teleman_bound(Q, s, t)))
    return rows, all(r.ok for r in rows)


def teleman_bounds(Q: Quiver, d: Sequence[int], s: Stability) -> List[Tuple[HNType, int]]:
    system = HNSystem(Q, d, s)
    return [(t, teleman_bound(Q, s, t)) for t in system.proper_types()]
