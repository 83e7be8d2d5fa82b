"""Slow reference computations used to cross-check the Chow-ring engine."""

import itertools
import random
from fractions import Fraction
from math import factorial

from quiverkit.exactmath import MultiPoly, PolyRing


def elementary(values, k):
    return sum((_prod(c) for c in itertools.combinations(values, k)), Fraction(0))


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


def generator_point(ctx, roots):
    """Values of the x generators at a point given by Chern roots per vertex."""
    point = [0] * ctx.ring.nvars
    for (i, k), idx in ctx.gen_index.items():
        point[idx] = elementary(roots[i], k)
    return point


def random_roots(ctx, rng):
    return [[Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(di)] for di in ctx.d]


def rho_by_coset_sum(ctx, e, f, roots):
    """sum over w in W / W_e of w(f E_e / D_e) at the given roots, as a number.

    ``f`` is a callable on per-vertex root lists, assumed W_e-invariant.
    """
    Q, d = ctx.quiver, ctx.d
    total = Fraction(0)
    count = 0
    for perms in itertools.product(*(itertools.permutations(range(di)) for di in d)):
        t = [[roots[i][p] for p in perm] for i, perm in enumerate(perms)]
        num = f(t)
        for i, j in Q.arrow_list():
            for r in range(e[i]):
                for s in range(e[j], d[j]):
                    num *= t[j][s] - t[i][r]
        den = Fraction(1)
        for i in range(len(d)):
            for r in range(e[i]):
                for s in range(e[i], d[i]):
                    den *= t[i][s] - t[i][r]
        total += num / den
        count += 1
    order = 1
    for i in range(len(d)):
        order *= factorial(e[i]) * factorial(d[i] - e[i])
    return total / order


def _series_of_linear(R, coeffs, lin, cap):
    """sum_k coeffs[k] * lin^k truncated at cap."""
    out = R.zero()
    power = R.one()
    for k in range(cap + 1):
        if coeffs[k]:
            out = out + power.scale(coeffs[k])
        power = power.mul(lin, cap)
    return out


def tangent_root_product(ctx, arrow_series, vertex_series):
    """prod_a prod_{r,s} A(t_{t(a),s} - t_{s(a),r}) * prod_i prod_{r,s} B(t_{i,s} - t_{i,r})."""
    R, cap = ctx.root_ring, ctx.N
    t = lambda i, r: R.gen(ctx.root_index[(i, r)])
    result = R.one()
    for i, j in ctx.quiver.arrow_list():
        for r in range(1, ctx.d[i] + 1):
            for s in range(1, ctx.d[j] + 1):
                result = result.mul(_series_of_linear(R, arrow_series, t(j, s) - t(i, r), cap), cap)
    for i, di in enumerate(ctx.d):
        for r in range(1, di + 1):
            for s in range(1, di + 1):
                if r != s:
                    result = result.mul(_series_of_linear(R, vertex_series, t(i, s) - t(i, r), cap), cap)
    return ctx.symmetric_to_generators(result)


def todd_series(cap):
    """Coefficients of x / (1 - e^{-x}) and of its inverse, up to x^cap."""
    inv = [Fraction((-1) ** k, factorial(k + 1)) for k in range(cap + 1)]
    # invert the power series inv
    td = [Fraction(0)] * (cap + 1)
    td[0] = Fraction(1)
    for n in range(1, cap + 1):
        td[n] = -sum(inv[k] * td[n - k] for k in range(1, n + 1))
    return td, inv


def chern_series(cap):
    """Coefficients of 1 + x and of 1 / (1 + x)."""
    top = [1, 1] + [0] * (cap - 1)
    return top[: cap + 1], [(-1) ** k for k in range(cap + 1)]
