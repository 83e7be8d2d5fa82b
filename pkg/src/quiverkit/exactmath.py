"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`.  On top of that this module provides
univariate polynomials and rational functions in one formal variable ``q``,
sparse multivariate polynomials over a weighted variable universe, and dense
row reduction over the rationals.

Coefficients are kept as plain ``int`` whenever they are integral; ``int`` and
``Fraction`` mix freely, and integral ``Fraction`` results are folded back to
``int`` so that integer-only workloads never pay for fraction arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]
Exponent = Tuple[int, ...]


class NotAPolynomialError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""

    def __init__(self, remainder: "UniPoly"):
        super().__init__(f"not a polynomial: division leaves remainder {remainder}")
        self.remainder = remainder


def canon(c: Number) -> Number:
    """Fold an integral Fraction back to int."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def rational(c) -> Number:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return canon(c)
    if isinstance(c, str):
        return canon(Fraction(c))
    raise TypeError(f"cannot use {c!r} as an exact coefficient")


def rational_div(a: Number, b: Number) -> Number:
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return canon(Fraction(a) / Fraction(b))


# ---------------------------------------------------------------------------
# univariate polynomials in q


class UniPoly:
    """Polynomial in ``q`` with rational coefficients, lowest degree first.

    The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Number, ...] = tuple(cs)

    @classmethod
    def q(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "UniPoly":
        if k < 0:
            raise ValueError("negative exponent")
        return cls([0] * k + [c])

    @classmethod
    def coerce(cls, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return cls((other,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly((other,))
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = UniPoly.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-UniPoly.coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return UniPoly.coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = UniPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> Tuple["UniPoly", "UniPoly"]:
        other = UniPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.leading
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = rational_div(c, lead)
            quot[k - dd] = f
            for j, b in enumerate(other.coeffs):
                rem[k - dd + j] -= f * b
        return UniPoly(quot), UniPoly(rem[:dd] if dd > 0 else ())

    def div_exact(self, other) -> "UniPoly":
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise NotAPolynomialError(rem)
        return quot

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly(rational_div(c, self.leading) for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return canon(acc) if isinstance(acc, Fraction) else acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            else:
                cs = str(c) if not isinstance(c, Fraction) or not mono else f"({c})"
                term = cs + ("*" + mono if mono else "")
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    return a.monic()


class RationalFunction:
    """Reduced quotient of two polynomials in ``q`` with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = UniPoly.coerce(num), UniPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UniPoly(), UniPoly((1,))
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.div_exact(g), den.div_exact(g)
            lead = den.leading
            if lead != 1:
                num = num * rational_div(1, lead)
                den = den * rational_div(1, lead)
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        return cls(other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_polynomial(self) -> UniPoly:
        if not self.is_polynomial():
            raise NotAPolynomialError(divmod(self.num, self.den)[1])
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, UniPoly)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = RationalFunction.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num**n, self.den**n)

    def __call__(self, x):
        return rational_div(self.num(x), self.den(x))

    def __repr__(self) -> str:
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num})/({self.den})"


def q_power(k: int) -> RationalFunction:
    """q^k for any integer k."""
    if k >= 0:
        return RationalFunction(UniPoly.monomial(k))
    return RationalFunction(1, UniPoly.monomial(-k))


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


@dataclass(frozen=True)
class PolyRing:
    """An ordered universe of named indeterminates with positive degree weights."""

    names: Tuple[str, ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("one weight per variable is required")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        if any(w < 1 for w in self.weights):
            raise ValueError("variable weights must be positive")

    @classmethod
    def unweighted(cls, names: Sequence[str]) -> "PolyRing":
        return cls(tuple(names), (1,) * len(names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def degree_of(self, exp: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.constant(1)

    def constant(self, c) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.nvars: c})

    def gen(self, var: Union[int, str]) -> "MultiPoly":
        i = self.index(var) if isinstance(var, str) else var
        exp = [0] * self.nvars
        exp[i] = 1
        return MultiPoly(self, {tuple(exp): 1})

    def gens(self) -> List["MultiPoly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp: Sequence[int], c=1) -> "MultiPoly":
        return MultiPoly(self, {tuple(exp): c})

    def monomials(self, degree: int) -> List[Exponent]:
        """All exponent tuples of weighted degree exactly ``degree``, lex ascending."""
        out: List[Exponent] = []

        def rec(i: int, left: int, prefix: List[int]):
            if i == self.nvars:
                if left == 0:
                    out.append(tuple(prefix))
                return
            w = self.weights[i]
            for e in range(left // w + 1):
                prefix.append(e)
                rec(i + 1, left - w * e, prefix)
                prefix.pop()

        if degree >= 0:
            rec(0, degree, [])
        out.sort()
        return out


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    """Sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Number]):
        self.ring = ring
        clean: Dict[Exponent, Number] = {}
        for exp, c in terms.items():
            if len(exp) != ring.nvars or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp!r} for {ring.nvars} variables")
            c = rational(c)
            if c != 0:
                clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring: PolyRing, terms: Dict[Exponent, Number]) -> "MultiPoly":
        # trusted constructor: caller guarantees valid exponents
        p = object.__new__(cls)
        p.ring = ring
        p.terms = {e: canon(c) for e, c in terms.items() if c != 0}
        return p

    def _check(self, other: "MultiPoly") -> None:
        if self.ring != other.ring:
            raise ValueError("polynomials live over different variable universes")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return self.ring.constant(rational(other))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, exp: Sequence[int]) -> Number:
        return self.terms.get(tuple(exp), 0)

    def constant_term(self) -> Number:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        return max((self.ring.degree_of(e) for e in self.terms), default=-1)

    def items(self) -> List[Tuple[Exponent, Number]]:
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return MultiPoly._raw(self.ring, out)

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def scale(self, c) -> "MultiPoly":
        c = rational(c)
        return MultiPoly._raw(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul(self, other, cap: Optional[int] = None) -> "MultiPoly":
        """Product, dropping every term of weighted degree above ``cap``."""
        if not isinstance(other, MultiPoly):
            return self.scale(other).truncate(cap) if cap is not None else self.scale(other)
        self._check(other)
        out: Dict[Exponent, Number] = {}
        if cap is None:
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
        else:
            deg = self.ring.degree_of
            right = [(eb, cb, deg(eb)) for eb, cb in other.terms.items()]
            right.sort(key=lambda t: t[2])
            for ea, ca in self.terms.items():
                room = cap - deg(ea)
                for eb, cb, db in right:
                    if db > room:
                        break
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
        return MultiPoly._raw(self.ring, out)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def pow(self, n: int, cap: Optional[int] = None) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result.mul(base, cap)
            n >>= 1
            if n:
                base = base.mul(base, cap)
        return result

    def __pow__(self, n: int) -> "MultiPoly":
        return self.pow(n)

    def truncate(self, cap: int) -> "MultiPoly":
        deg = self.ring.degree_of
        return MultiPoly._raw(self.ring, {e: c for e, c in self.terms.items() if deg(e) <= cap})

    def homogeneous(self, degree: int) -> "MultiPoly":
        deg = self.ring.degree_of
        return MultiPoly._raw(self.ring, {e: c for e, c in self.terms.items() if deg(e) == degree})

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variable ``i`` to variable ``perm[i]``."""
        n = self.ring.nvars
        out: Dict[Exponent, Number] = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                new[perm[i]] = k
            out[tuple(new)] = c
        return MultiPoly._raw(self.ring, out)

    def substitute(self, values: Mapping[int, "MultiPoly"], cap: Optional[int] = None) -> "MultiPoly":
        """Replace variable ``i`` by ``values[i]`` (a polynomial over the same ring)."""
        result = self.ring.zero()
        powers: Dict[Tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            keep = [0] * self.ring.nvars
            term = None
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if i in values:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = values[i].pow(k, cap)
                    term = powers[key] if term is None else term.mul(powers[key], cap)
                else:
                    keep[i] = k
            mono = MultiPoly._raw(self.ring, {tuple(keep): c})
            result = result + (mono if term is None else mono.mul(term, cap))
        return result

    def evaluate(self, point: Sequence) -> Number:
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total: Number = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total += v
        return canon(total) if isinstance(total, Fraction) else total

    def divide_by_difference(self, a: int, b: int) -> "MultiPoly":
        """Exact quotient by the linear form ``x_a - x_b``.

        Synthetic division in ``x_a`` with ``x_b`` as the root.  Raises
        :class:`ArithmeticError` when the division is not exact.
        """
        if a == b:
            raise ValueError("cannot divide by x - x")
        by_deg: Dict[int, Dict[Exponent, Number]] = {}
        for e, c in self.terms.items():
            k = e[a]
            rest = e[:a] + (0,) + e[a + 1:]
            by_deg.setdefault(k, {})[rest] = c
        if not by_deg:
            return self
        top = max(by_deg)
        quotient: Dict[Exponent, Number] = {}
        carry: Dict[Exponent, Number] = {}
        for k in range(top, 0, -1):
            # q_{k-1} = c_k + x_b * q_k
            coeff = dict(by_deg.get(k, {}))
            for e, c in carry.items():
                shifted = e[:b] + (e[b] + 1,) + e[b + 1:]
                coeff[shifted] = coeff.get(shifted, 0) + c
            carry = {e: c for e, c in coeff.items() if c != 0}
            for e, c in carry.items():
                quotient[e[:a] + (k - 1,) + e[a + 1:]] = c
        remainder = dict(by_deg.get(0, {}))
        for e, c in carry.items():
            shifted = e[:b] + (e[b] + 1,) + e[b + 1:]
            remainder[shifted] = remainder.get(shifted, 0) + c
        if any(c != 0 for c in remainder.values()):
            raise ArithmeticError("polynomial is not divisible by the linear form")
        return MultiPoly._raw(self.ring, quotient)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-self.ring.degree_of(t[0]), t[0]), reverse=False):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def exp_series(p: MultiPoly, cap: int) -> MultiPoly:
    """Truncated exponential of a polynomial without constant term."""
    if p.constant_term() != 0:
        raise ValueError("exp_series needs a polynomial without constant term")
    total = p.ring.one()
    term = p.ring.one()
    for k in range(1, cap + 1):
        term = term.mul(p, cap).scale(Fraction(1, k))
        if term.is_zero():
            break
        total = total + term
    return total


def log_series(p: MultiPoly, cap: int) -> MultiPoly:
    """Truncated logarithm of a polynomial with constant term 1."""
    if p.constant_term() != 1:
        raise ValueError("log_series needs constant term 1")
    u = p - 1
    total = p.ring.zero()
    term = p.ring.one()
    for k in range(1, cap + 1):
        term = term.mul(u, cap)
        if term.is_zero():
            break
        total = total + term.scale(Fraction((-1) ** (k + 1), k))
    return total


# ---------------------------------------------------------------------------
# dense linear algebra over Q


class ExactMatrix:
    """Rectangular matrix of rationals."""

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        self.rows: List[List[Number]] = [[rational(x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("matrix rows must have equal length")
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "ExactMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: Tuple[int, int]) -> Number:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows!r})"

    def row_reduce(self) -> Tuple["ExactMatrix", int, List[int]]:
        """Reduced row echelon form, rank and pivot columns.

        Pivots are taken in the first column with a nonzero entry, using the
        topmost such row, so the result does not depend on anything but the
        input.
        """
        rows = [[Fraction(x) for x in r] for r in self.rows]
        m, n = len(rows), self.ncols
        pivots: List[int] = []
        r = 0
        for col in range(n):
            if r == m:
                break
            piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / rows[r][col]
            rows[r] = [x * inv for x in rows[r]]
            pr = rows[r]
            for i in range(m):
                if i != r and rows[i][col] != 0:
                    f = rows[i][col]
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
            pivots.append(col)
            r += 1
        return ExactMatrix([[canon(x) for x in row] for row in rows], n), len(pivots), pivots

    def rank(self) -> int:
        if all(type(x) is int for row in self.rows for x in row):
            return integer_rank(self.rows)
        return self.row_reduce()[1]

    def nullspace(self) -> List[List[Number]]:
        """Basis of {v : M v = 0}, one vector per free column."""
        rref, rank, pivots = self.row_reduce()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v: List[Number] = [0] * self.ncols
            v[f] = 1
            for i, p in enumerate(pivots):
                v[p] = canon(-Fraction(rref.rows[i][f]))
            basis.append(v)
        return basis


def row_reduce(m: ExactMatrix) -> Tuple[ExactMatrix, int, List[int]]:
    return m.row_reduce()


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pr = work[rank]
        a = pr[col]
        for i in range(rank + 1, len(work)):
            b = work[i][col]
            if b == 0:
                continue
            row = [a * x - b * y for x, y in zip(work[i], pr)]
            g = 0
            for x in row:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g > 1:
                row = [x // g for x in row]
            work[i] = row
        rank += 1
        if rank == len(work):
            break
    return rank


class EchelonForm:
    """Incrementally built row echelon form over Q with sparse rows.

    Rows are dicts ``column -> coefficient``.  Each stored row has a distinct
    pivot (its smallest column) with coefficient 1, and no stored row has a
    nonzero entry in a column that is a pivot of another row, which makes
    :meth:`reduce` a normal form for the quotient by the row space.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: Dict[int, Dict[int, Number]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, row: Mapping[int, Number]) -> Dict[int, Number]:
        vec = {j: c for j, c in row.items() if c != 0}
        for p in [j for j in vec if j in self.rows]:
            c = vec.get(p, 0)
            if c == 0:
                continue
            for j, v in self.rows[p].items():
                vec[j] = vec.get(j, 0) - c * v
        return {j: canon(c) for j, c in vec.items() if c != 0}

    def add(self, row: Mapping[int, Number]) -> bool:
        """Insert a row; returns whether the rank grew."""
        vec = self.reduce(row)
        if not vec:
            return False
        p = min(vec)
        inv = Fraction(1) / Fraction(vec[p])
        vec = {j: canon(c * inv) for j, c in vec.items()}
        for q, other in self.rows.items():
            c = other.get(p, 0)
            if c != 0:
                for j, v in vec.items():
                    other[j] = other.get(j, 0) - c * v
                for j in [j for j, v in other.items() if v == 0]:
                    del other[j]
                for j in list(other):
                    other[j] = canon(other[j])
        self.rows[p] = vec
        return True

    def free_columns(self) -> List[int]:
        return [j for j in range(self.ncols) if j not in self.rows]


def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def compositions_bounded(total: int, parts: int, bound: Optional[Sequence[int]] = None) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of nonnegative integers with the given sum (lex order)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    hi = total if bound is None else min(total, bound[0])
    for first in range(hi + 1):
        rest = None if bound is None else bound[1:]
        for tail in compositions_bounded(total - first, parts - 1, rest):
            yield (first,) + tail


def subvectors(d: Sequence[int]) -> List[Tuple[int, ...]]:
    """All e with 0 <= e <= d componentwise, lex ascending."""
    return list(itertools.product(*(range(x + 1) for x in d)))
