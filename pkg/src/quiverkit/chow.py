"""Intersection theory on fine quiver moduli via the tautological presentation.

The Chow ring of M = M^st(Q, d) is presented as the ring of vertexwise
symmetric polynomials in Chern roots t_{i,1..d_i} of the universal bundles,
generated by the elementary symmetric classes x_{i,k} = c_k(U_i), modulo

* the linear relation sum_i chi_i x_{i,1}, and
* for every forbidden e (0 < e < d with slope(e) > slope(d)) the classes

      rho_e(f) = sum_{w in W/W_e} w( f * E_e / D_e )

  where W = prod_i S_{d_i}, W_e its block subgroup, f is W_e-invariant,
  E_e = prod_{a: i->j} prod_{r<=e_i, s>e_j} (t_{j,s} - t_{i,r}) and
  D_e = prod_i prod_{r<=e_i<s} (t_{i,s} - t_{i,r}).

Writing V for the vertexwise Vandermonde product and V_e = V / D_e, one gets
rho_e(f) = Alt(f E_e V_e) / (|W_e| V), and the alternant of any polynomial is
read off its strictly decreasing exponents as a sum of Schur polynomials.  So
relations are computed without coset sums or polynomial division.

Integrals are normalised by the structure sheaf: the degree-N functional is
scaled so that the Todd class integrates to 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConsistencyError, UnsupportedRegimeError, UsageError
from .exactmath import (
    EchelonForm,
    Exponent,
    MultiPoly,
    Number,
    PolyRing,
    canon,
    exp_series,
    log_series,
    permutation_sign,
)
from .hn import HNSystem, betti_numbers
from .quiver import DimVector, Quiver
from .stability import Stability, canonical_stability, has_stables, is_theta_coprime

# c_1(L(theta)) = LINE_BUNDLE_SIGN * sum_i theta_i x_{i,1}; fixed by the
# Hilbert series of the 4-Kronecker moduli space K(2,3): chi(L(3,-2)) = 126,
# while the opposite sign yields chi(L^-1) = 0
LINE_BUNDLE_SIGN = -1


# ---------------------------------------------------------------------------
# symmetric function helpers (single block of k roots)


def _partitions(n: int, max_parts: int, max_part: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Partitions of n with at most max_parts parts, parts weakly decreasing."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    if max_parts == 0:
        return []
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, max_parts - 1, first):
            out.append((first,) + rest)
    return out


def _distinct_permutations(v: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    return sorted(set(itertools.permutations(v)))


@lru_cache(maxsize=None)
def _elementary_in_roots(k: int, n: int) -> Tuple[Tuple[Exponent, int], ...]:
    """e_k(t_1..t_n) as (exponent, coefficient) pairs."""
    out = []
    for subset in itertools.combinations(range(n), k):
        exp = [0] * n
        for r in subset:
            exp[r] = 1
        out.append((tuple(exp), 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _block_symmetric_to_elementary(n: int, dominant: Tuple[Tuple[Exponent, Number], ...]) -> Tuple[Tuple[Exponent, Number], ...]:
    """Rewrite a symmetric polynomial in n roots in the elementary basis.

    The input lists only the coefficients at weakly decreasing exponents,
    which determine a symmetric polynomial.  Output exponents ``a`` stand for
    prod_k e_k^{a_k}.
    """
    coeffs: Dict[Exponent, Number] = dict(dominant)
    result: Dict[Exponent, Number] = {}
    while coeffs:
        alpha = max(coeffs)
        c = coeffs.get(alpha, 0)
        if c == 0:
            del coeffs[alpha]
            continue
        a = tuple(alpha[k] - (alpha[k + 1] if k + 1 < n else 0) for k in range(n))
        result[a] = result.get(a, 0) + c
        for beta, v in _elementary_monomial_dominant(n, a):
            coeffs[beta] = coeffs.get(beta, 0) - c * v
            if coeffs[beta] == 0:
                del coeffs[beta]
    return tuple(sorted((a, canon(c)) for a, c in result.items() if c != 0))


@lru_cache(maxsize=None)
def _elementary_monomial_dominant(n: int, a: Tuple[int, ...]) -> Tuple[Tuple[Exponent, int], ...]:
    """Weakly decreasing part of prod_k e_k(t_1..t_n)^{a_k}."""
    poly: Dict[Exponent, int] = {(0,) * n: 1}
    for k, power in enumerate(a, start=1):
        for _ in range(power):
            nxt: Dict[Exponent, int] = {}
            for e, c in poly.items():
                for f, _one in _elementary_in_roots(k, n):
                    g = tuple(x + y for x, y in zip(e, f))
                    nxt[g] = nxt.get(g, 0) + c
            poly = nxt
    return tuple(
        (e, c) for e, c in sorted(poly.items())
        if all(e[r] >= e[r + 1] for r in range(n - 1))
    )


@lru_cache(maxsize=None)
def _schur_in_elementary(n: int, lam: Tuple[int, ...]) -> Tuple[Tuple[Exponent, Number], ...]:
    """s_lambda(t_1..t_n) in the elementary basis, via its SSYT expansion."""
    lam = tuple(lam) + (0,) * (n - len(lam))
    dominant: Dict[Exponent, int] = {}
    for mu in _partitions(sum(lam), n):
        mu = mu + (0,) * (n - len(mu))
        k = _kostka(lam, mu)
        if k:
            dominant[mu] = k
    return _block_symmetric_to_elementary(n, tuple(sorted(dominant.items())))


@lru_cache(maxsize=None)
def _kostka(lam: Tuple[int, ...], mu: Tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape lam and content mu."""
    lam = tuple(x for x in lam if x)
    if sum(lam) != sum(mu):
        return 0
    if not lam:
        return 1
    # strip the largest entry: its cells form a horizontal strip
    k = len(mu)
    while k and mu[k - 1] == 0:
        k -= 1
    if k == 0:
        return 0
    m = mu[k - 1]
    rest_mu = mu[: k - 1]
    total = 0

    def strips(i: int, left: int, shape: List[int]):
        nonlocal total
        if i == len(lam):
            if left == 0:
                total += _kostka(tuple(shape), rest_mu)
            return
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        for take in range(0, min(left, lam[i] - nxt) + 1):
            shape.append(lam[i] - take)
            strips(i + 1, left - take, shape)
            shape.pop()

    strips(0, m, [])
    return total


# ---------------------------------------------------------------------------
# moduli context


@dataclass
class GradedBasis:
    """Per-degree quotient bases of the Chow ring."""

    monomials: Dict[int, List[Exponent]]
    echelon: Dict[int, EchelonForm]
    basis: Dict[int, List[Exponent]]

    def dimensions(self) -> List[int]:
        return [len(self.basis[n]) for n in sorted(self.basis)]


class ModuliContext:
    """A fine, smooth projective quiver moduli space and its Chow ring."""

    def __init__(self, Q: Quiver, d: Sequence[int], s: Stability, chi: Sequence[int]):
        d = Q.vector(d)
        chi = Q.vector(chi, "linearisation chi")
        if len(s.theta) != Q.vertices:
            raise UsageError("stability parameter length does not match the quiver")
        if any(x < 0 for x in d) or not any(d):
            raise UsageError("a nonzero nonnegative dimension vector is required")
        if s.theta_of(d) != 0:
            raise UsageError(f"theta . d = {s.theta_of(d)}, must be 0")
        if sum(c * x for c, x in zip(chi, d)) != 1:
            raise UsageError("chi . d must equal 1 for a universal family to exist")
        if not Q.is_acyclic():
            raise UnsupportedRegimeError("intersection theory needs an acyclic quiver")
        if not is_theta_coprime(Q, d, s):
            raise UnsupportedRegimeError(f"{list(d)} is not coprime for theta={list(s.theta)}")
        self.quiver = Q
        self.d = d
        self.stability = s
        self.chi = chi
        self.hn = HNSystem(Q, d, s)
        if not has_stables(Q, d, s, self.hn.lattice):
            raise UnsupportedRegimeError("there are no stable representations")
        if not self.hn.is_amply_stable():
            raise UnsupportedRegimeError("the unstable locus has a divisorial stratum")
        self.N = 1 - Q.euler_form(d, d)

        # generators x_{i,k} of weight k, and Chern roots t_{i,r}
        self.gen_index: Dict[Tuple[int, int], int] = {}
        names, weights = [], []
        for i, di in enumerate(d):
            for k in range(1, di + 1):
                self.gen_index[(i, k)] = len(names)
                names.append(f"x{i}_{k}")
                weights.append(k)
        self.ring = PolyRing(tuple(names), tuple(weights))
        self.root_index: Dict[Tuple[int, int], int] = {}
        roots = []
        for i, di in enumerate(d):
            for r in range(1, di + 1):
                self.root_index[(i, r)] = len(roots)
                roots.append(f"t{i}_{r}")
        self.root_ring = PolyRing.unweighted(roots)
        self._blocks = [
            [self.root_index[(i, r)] for r in range(1, di + 1)] for i, di in enumerate(d)
        ]
        self._basis: Optional[GradedBasis] = None
        self._todd: Optional[MultiPoly] = None
        self._top_scale: Optional[Fraction] = None

    # -- discrete invariants ------------------------------------------------

    def dimension(self) -> int:
        return self.N

    def betti_numbers(self) -> List[int]:
        return betti_numbers(self.quiver, self.d, self.stability, self.hn)

    def picard_rank(self) -> int:
        b = self.betti_numbers()
        return b[2] if len(b) > 2 else 0

    def index(self) -> int:
        g = 0
        for c in canonical_stability(self.quiver, self.d):
            g = gcd(g, c)
        return g

    def forbidden_subdimensions(self) -> List[DimVector]:
        s, d = self.stability, self.d
        mu = s.slope(d)
        return [
            e for e in itertools.product(*(range(x + 1) for x in d))
            if any(e) and e != d and s.slope(e) > mu
        ]

    # -- ring elements ----------------------------------------------------

    def x(self, i: int, k: int) -> MultiPoly:
        """The generator c_k(U_i); zero outside 1 <= k <= d_i except c_0 = 1."""
        if k == 0:
            return self.ring.one()
        if (i, k) not in self.gen_index:
            return self.ring.zero()
        return self.ring.gen(self.gen_index[(i, k)])

    def linear_relation(self) -> MultiPoly:
        rel = self.ring.zero()
        for i, c in enumerate(self.chi):
            if c:
                rel = rel + self.x(i, 1).scale(c)
        return rel

    def first_chern_class(self, character: Sequence[int]) -> MultiPoly:
        character = self.quiver.vector(character, "character")
        c1 = self.ring.zero()
        for i, c in enumerate(character):
            if c:
                c1 = c1 + self.x(i, 1).scale(LINE_BUNDLE_SIGN * c)
        return c1

    def chern_character_line_bundle(self, character: Sequence[int]) -> MultiPoly:
        return exp_series(self.first_chern_class(character), self.N)

    def _x_from_schur(self, lams: Sequence[Tuple[int, ...]]) -> MultiPoly:
        """prod_i s_{lam_i}(t_{i,.}) in the generators."""
        result = self.ring.one()
        for i, lam in enumerate(lams):
            di = self.d[i]
            if di == 0:
                continue
            terms: Dict[Exponent, Number] = {}
            for a, c in _schur_in_elementary(di, tuple(lam)):
                exp = [0] * self.ring.nvars
                for k, ak in enumerate(a, start=1):
                    if ak:
                        exp[self.gen_index[(i, k)]] = ak
                terms[tuple(exp)] = c
            result = result * MultiPoly(self.ring, terms)
        return result

    def symmetric_to_generators(self, p: MultiPoly) -> MultiPoly:
        """Express a vertexwise symmetric root polynomial in the x generators."""
        if p.ring != self.root_ring:
            raise UsageError("expected a polynomial in the Chern roots")
        # multiply by the Vandermonde product and read off Schur coefficients
        vdm = self.root_ring.one()
        for block in self._blocks:
            for a, b in itertools.combinations(block, 2):
                vdm = vdm * (self.root_ring.gen(a) - self.root_ring.gen(b))
        # p * vdm is already alternating, so Alt counts each Schur term |W| times
        order = 1
        for di in self.d:
            order *= factorial(di)
        return self._alternant_to_generators(p * vdm, order)

    def _alternant_to_generators(self, g: MultiPoly, scale: Number) -> MultiPoly:
        """(Alt g) / (scale * a_delta) in the generators, a_delta = prod_{r<s}(t_r - t_s)."""
        schur: Dict[Tuple[Tuple[int, ...], ...], Number] = {}
        for exp, c in g.terms.items():
            sign = 1
            lams = []
            ok = True
            for block in self._blocks:
                part = [exp[j] for j in block]
                n = len(part)
                if len(set(part)) != n:
                    ok = False
                    break
                order = sorted(range(n), key=lambda r: -part[r])
                sign *= permutation_sign(order)
                beta = [part[r] for r in order]
                lams.append(tuple(beta[r] - (n - 1 - r) for r in range(n)))
            if not ok:
                continue
            key = tuple(lams)
            schur[key] = schur.get(key, 0) + sign * c
        result = self.ring.zero()
        for lams, c in sorted(schur.items()):
            if c:
                result = result + self._x_from_schur(lams).scale(Fraction(c) / scale)
        return result

    # -- tautological relations -----------------------------------------

    def _levi_blocks(self, e: Sequence[int]) -> List[List[int]]:
        blocks = []
        for i, di in enumerate(self.d):
            roots = self._blocks[i]
            if e[i]:
                blocks.append(roots[: e[i]])
            if di - e[i]:
                blocks.append(roots[e[i]:])
        return blocks

    def _relation_kernel(self, e: Sequence[int]) -> MultiPoly:
        """E_e * V_e, with V_e the Vandermonde product of the Levi blocks."""
        R = self.root_ring
        t = lambda i, r: R.gen(self.root_index[(i, r)])
        h = R.one()
        for i, j in self.quiver.arrow_list():
            for r in range(1, e[i] + 1):
                for s in range(e[j] + 1, self.d[j] + 1):
                    h = h * (t(j, s) - t(i, r))
        for block in self._levi_blocks(e):
            for a, b in itertools.combinations(block, 2):
                h = h * (R.gen(b) - R.gen(a))
        return h

    def _levi_invariants(self, e: Sequence[int], degree: int) -> List[MultiPoly]:
        """Monomial-symmetric spanning set of W_e-invariants of a given degree."""
        blocks = self._levi_blocks(e)
        R = self.root_ring
        out = []
        for degs in itertools.product(range(degree + 1), repeat=len(blocks)):
            if sum(degs) != degree:
                continue
            choices = [_partitions(dg, len(b)) for dg, b in zip(degs, blocks)]
            for lams in itertools.product(*choices):
                terms: Dict[Exponent, int] = {(0,) * R.nvars: 1}
                for lam, block in zip(lams, blocks):
                    padded = tuple(lam) + (0,) * (len(block) - len(lam))
                    nxt: Dict[Exponent, int] = {}
                    for perm in _distinct_permutations(padded):
                        for ex, c in terms.items():
                            new = list(ex)
                            for j, k in zip(block, perm):
                                new[j] += k
                            nxt[tuple(new)] = c
                    terms = nxt
                out.append(MultiPoly(R, terms))
        return out

    def levi_order(self, e: Sequence[int]) -> int:
        order = 1
        for block in self._levi_blocks(e):
            order *= factorial(len(block))
        return order

    def rho(self, e: Sequence[int], f: MultiPoly) -> MultiPoly:
        """The tautological class rho_e(f) in the generators (f W_e-invariant)."""
        e = tuple(e)
        g = f * self._relation_kernel(e)
        # V = prod_{r<s} (t_s - t_r) = (-1)^{sum binom(d_i, 2)} a_delta
        sign = (-1) ** sum(comb(di, 2) for di in self.d)
        return self._alternant_to_generators(g, sign * self.levi_order(e))

    def tautological_relations(self, degree: int) -> List[MultiPoly]:
        if not 0 <= degree <= self.N:
            raise UsageError(f"degree must lie in 0..{self.N}")
        rels: List[MultiPoly] = []
        if degree >= 1:
            lin = self.linear_relation()
            for exp in self.ring.monomials(degree - 1):
                rels.append(lin * self.ring.monomial(exp))
        Q, d = self.quiver, self.d
        for e in self.forbidden_subdimensions():
            rest = tuple(x - y for x, y in zip(d, e))
            fdeg = degree + Q.euler_form(e, rest)
            if fdeg < 0:
                continue
            for f in self._levi_invariants(e, fdeg):
                r = self.rho(e, f)
                if not r.is_zero():
                    rels.append(r)
        return rels

    # -- graded quotient ----------------------------------------------------

    def graded_basis(self) -> GradedBasis:
        if self._basis is not None:
            return self._basis
        betti = self.betti_numbers()
        monomials, echelon, basis = {}, {}, {}
        for n in range(self.N + 1):
            monos = self.ring.monomials(n)
            col = {m: j for j, m in enumerate(monos)}
            ech = EchelonForm(len(monos))
            for rel in self.tautological_relations(n):
                ech.add({col[m]: c for m, c in rel.terms.items()})
            monomials[n] = monos
            echelon[n] = ech
            basis[n] = [monos[j] for j in ech.free_columns()]
            expected = betti[2 * n] if 2 * n < len(betti) else 0
            if len(basis[n]) != expected:
                raise ConsistencyError(
                    f"degree {n}: quotient has dimension {len(basis[n])}, Betti number is {expected}"
                )
        self._basis = GradedBasis(monomials, echelon, basis)
        return self._basis

    def normal_form(self, c: MultiPoly) -> MultiPoly:
        """Reduce a class modulo the relations, degree by degree, up to degree N."""
        gb = self.graded_basis()
        out: Dict[Exponent, Number] = {}
        for n in range(self.N + 1):
            part = c.homogeneous(n)
            if part.is_zero():
                continue
            monos = gb.monomials[n]
            col = {m: j for j, m in enumerate(monos)}
            red = gb.echelon[n].reduce({col[m]: v for m, v in part.terms.items()})
            for j, v in red.items():
                out[monos[j]] = v
        return MultiPoly(self.ring, out)

    def todd_class(self) -> MultiPoly:
        if self._todd is None:
            self._todd = _todd_class(self)
        return self._todd

    def _top_coefficient(self, c: MultiPoly) -> Number:
        gb = self.graded_basis()
        b = gb.basis[self.N][0]
        return self.normal_form(c.homogeneous(self.N)).coefficient(b)

    def integral(self, c: MultiPoly) -> Number:
        if self._top_scale is None:
            t = self._top_coefficient(self.todd_class())
            if t == 0:
                raise ConsistencyError("the Todd class has vanishing top-degree component")
            self._top_scale = Fraction(1) / Fraction(t)
        return canon(Fraction(self._top_coefficient(c)) * self._top_scale)

    def point_class(self) -> MultiPoly:
        gb = self.graded_basis()
        b = self.ring.monomial(gb.basis[self.N][0])
        return b.scale(Fraction(1) / Fraction(self.integral(b)))

    def euler_characteristic(self, c: MultiPoly) -> Number:
        return self.integral(c.mul(self.todd_class(), self.N))

    def hilbert_values(self, character: Sequence[int], n_max: int) -> List[int]:
        character = self.quiver.vector(character, "character")
        if sum(c * x for c, x in zip(character, self.d)) != 0:
            raise UsageError("the character must vanish on d to define a line bundle")
        c1 = self.first_chern_class(character)
        td = self.todd_class()
        values = []
        for n in range(n_max):
            v = self.integral(exp_series(c1.scale(n), self.N).mul(td, self.N)) if n else self.integral(td)
            if isinstance(v, Fraction):
                raise ConsistencyError(f"Euler characteristic {v} of L^{n} is not an integer")
            values.append(v)
        return values

    def degree_anticanonical(self) -> int:
        c1 = self.first_chern_class(canonical_stability(self.quiver, self.d))
        v = self.integral(c1.pow(self.N, self.N))
        if isinstance(v, Fraction):
            raise ConsistencyError(f"anticanonical degree {v} is not an integer")
        return v


def _todd_class(ctx: ModuliContext) -> MultiPoly:
    """td(T_M) from 0 -> O -> sum U_i^v U_i -> sum_a U_s^v U_t -> T -> 0.

    log S(x) = sum_k a_k x^k with S(x) = x / (1 - e^{-x}); the logarithm of
    td is sum_k a_k times the k-th power sum of the virtual Chern roots, and
    power sums of t_j - t_i expand into power sums of each vertex.
    """
    N, ring = ctx.N, ctx.ring
    coeffs = _log_todd_coefficients(N)
    psums = {i: _power_sums(ctx, i, N) for i in range(ctx.quiver.vertices)}

    def pair_sum(i: int, j: int, k: int) -> MultiPoly:
        # sum_{r, s} (t_{j,s} - t_{i,r})^k
        total = ring.zero()
        for m in range(k + 1):
            term = psums[j][m].mul(psums[i][k - m], N)
            if term:
                total = total + term.scale(comb(k, m) * (-1) ** (k - m))
        return total

    log_td = ring.zero()
    for k in range(1, N + 1):
        a = coeffs[k]
        if a == 0:
            continue
        pk = ring.zero()
        for i, j in ctx.quiver.arrow_list():
            pk = pk + pair_sum(i, j, k)
        for i in range(ctx.quiver.vertices):
            pk = pk - pair_sum(i, i, k)
        log_td = log_td + pk.scale(a)
    return exp_series(log_td, N)


def _power_sums(ctx: ModuliContext, i: int, cap: int) -> List[MultiPoly]:
    """p_0..p_cap of the roots at vertex i (Newton's identities)."""
    ring = ctx.ring
    p = [ring.constant(ctx.d[i])]
    for m in range(1, cap + 1):
        acc = ring.zero()
        for j in range(1, m):
            ej = ctx.x(i, j)
            if ej:
                acc = acc + ej.mul(p[m - j], cap).scale((-1) ** (j - 1))
        em = ctx.x(i, m)
        if em:
            acc = acc + em.scale((-1) ** (m - 1) * m)
        p.append(acc)
    return p


@lru_cache(maxsize=None)
def _log_todd_coefficients(cap: int) -> Tuple[Fraction, ...]:
    """Taylor coefficients of log(x / (1 - e^{-x})) up to x^cap."""
    one = PolyRing.unweighted(("x",))
    x = one.gen(0)
    # (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    inv = MultiPoly(one, {(k,): Fraction((-1) ** k, factorial(k + 1)) for k in range(cap + 1)})
    log_inv = log_series(inv, cap)
    coeffs = [Fraction(0)] * (cap + 1)
    for (k,), c in log_inv.terms.items():
        coeffs[k] = -Fraction(c)
    return tuple(coeffs)


def moduli_context(Q: Quiver, d: Sequence[int], theta: Sequence[int], chi: Sequence[int],
                   denom: Optional[Sequence[int]] = None) -> ModuliContext:
    return ModuliContext(Q, d, Stability.of(theta, denom), chi)
