"""Exact algebraic numbers in the few shapes the Laplacian spectra here need.

Rationals are plain :class:`fractions.Fraction`. The other variants are
immutable dataclasses: quadratic surds ``a + b*sqrt(D)``, elements of the
cyclotomic field of order 2n (reduced modulo Psi_2n), real roots of an
irreducible integer cubic given by an isolating interval, and integer/rational
combinations of the conjugate roots of one cubic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath

from ..errors import InvalidParameter
from .numtheory import rational_roots, squarefree_decomposition
from .poly import IntPolynomial, cyclotomic, isolate_real_roots, reduce_mod, refine_root


@dataclass(frozen=True)
class Surd:
    """``a + b*sqrt(d)`` with ``d > 1`` square-free and ``b != 0``.

    Build through :func:`surd`, which normalizes and collapses to a Fraction.
    """

    a: Fraction
    b: Fraction
    d: int

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def approx(self, dps: int = 50):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator
            ) * mpmath.sqrt(self.d)

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def is_zero(self) -> bool:
        return False

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


def surd(a, b, d: int) -> Union[Fraction, Surd]:
    """Normalized ``a + b*sqrt(d)``: d is made square-free, b = 0 collapses to a Fraction."""
    a, b = Fraction(a), Fraction(b)
    if d < 0:
        raise InvalidParameter("only real surds are supported")
    square, free = squarefree_decomposition(d) if d else (0, 1)
    b *= square
    if b == 0 or d == 0:
        return a
    if free == 1:
        return a + b
    return Surd(a, b, free)


@dataclass(frozen=True)
class CyclotomicElement:
    """Element of Q(omega), omega = exp(2*pi*i / 2n), as a residue modulo Psi_2n."""

    n: int
    residue: tuple  # ints where integral, else Fractions

    @classmethod
    def from_coeffs(cls, n: int, coeffs: Sequence) -> "CyclotomicElement":
        r = reduce_mod([_normal(c) for c in coeffs], cyclotomic(2 * n))
        return cls(n, tuple(_normal(c) for c in r))

    @classmethod
    def path_eigenvalue(cls, n: int, j: int) -> "CyclotomicElement":
        """mu_j = 2 + omega^j + omega^(2n-j)."""
        coeffs = [0] * (2 * n)
        coeffs[0] += 2
        coeffs[j % (2 * n)] += 1
        coeffs[(2 * n - j) % (2 * n)] += 1
        return cls.from_coeffs(n, coeffs)

    def is_zero(self) -> bool:
        return not self.residue

    def approx(self, dps: int = 50):
        with mpmath.workdps(dps):
            w = mpmath.expjpi(mpmath.mpf(1) / self.n)
            acc = mpmath.mpc(0)
            for k, c in enumerate(self.residue):
                acc += (mpmath.mpf(c.numerator) / c.denominator) * w**k
            return acc

    def __float__(self):
        return float(mpmath.re(self.approx(30)))


@dataclass(frozen=True)
class CubicRoot:
    """The unique real root of an irreducible integer cubic in the interval (lo, hi]."""

    minpoly: IntPolynomial
    lo: Fraction
    hi: Fraction

    def refine(self, width) -> tuple[Fraction, Fraction]:
        return refine_root(self.minpoly, self.lo, self.hi, Fraction(width))

    def approx(self, dps: int = 50):
        lo, hi = self.refine(Fraction(1, 10 ** (dps + 5)))
        with mpmath.workdps(dps + 10):
            mid = (lo + hi) / 2
            return mpmath.mpf(mid.numerator) / mid.denominator

    def __float__(self):
        lo, hi = self.refine(Fraction(1, 10**18))
        return float((lo + hi) / 2)

    def is_zero(self) -> bool:
        return False


def cubic_roots(minpoly: IntPolynomial) -> list[CubicRoot]:
    """All real roots of an irreducible cubic, ascending."""
    if minpoly.degree != 3:
        raise InvalidParameter("expected a cubic")
    return [CubicRoot(minpoly, lo, hi) for lo, hi in isolate_real_roots(minpoly)]


@dataclass(frozen=True)
class ConjugateCombination:
    """``constant + sum coeff_i * theta_i`` over the real roots of one irreducible cubic.

    Stored with the largest root eliminated through the trace, so that the
    remaining coordinates (1, theta_1, theta_2) are linearly independent over Q
    and the zero test is coordinate-wise.
    """

    minpoly: IntPolynomial
    constant: Fraction
    coeffs: tuple[Fraction, Fraction]

    def is_zero(self) -> bool:
        return self.constant == 0 and not any(self.coeffs)

    def approx(self, dps: int = 50):
        roots = cubic_roots(self.minpoly)
        with mpmath.workdps(dps + 10):
            c = self.constant
            acc = mpmath.mpf(c.numerator) / c.denominator
            for k, r in zip(self.coeffs, roots):
                acc += (mpmath.mpf(k.numerator) / k.denominator) * r.approx(dps + 10)
            return acc

    def __float__(self):
        return float(self.approx(30))


AlgebraicNumber = Union[Fraction, Surd, CyclotomicElement, CubicRoot, ConjugateCombination]


def is_zero(x: AlgebraicNumber) -> bool:
    if isinstance(x, (Fraction, int)):
        return x == 0
    return x.is_zero()


def approx(x: AlgebraicNumber, dps: int = 50):
    """High-precision real value (complex for a general cyclotomic element)."""
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        with mpmath.workdps(dps):
            return mpmath.mpf(x.numerator) / x.denominator
    return x.approx(dps)


def exact_linear_combination(vals: Sequence[AlgebraicNumber], l: Sequence[int]) -> AlgebraicNumber:
    """Exact value of ``sum l_j * vals_j``.

    All non-rational entries must share one representation: the same radicand,
    the same cyclotomic order, or conjugate roots of the same cubic.
    """
    if len(vals) != len(l):
        raise InvalidParameter("values and coefficients differ in length")
    kinds = {type(v) for v in vals if not isinstance(v, (Fraction, int))}
    if len(kinds) > 1:
        raise InvalidParameter(f"incompatible representations: {sorted(k.__name__ for k in kinds)}")
    rational = sum((Fraction(c) * v for v, c in zip(vals, l) if isinstance(v, (Fraction, int))), Fraction(0))
    if not kinds:
        return rational
    kind = kinds.pop()
    others = [(v, c) for v, c in zip(vals, l) if not isinstance(v, (Fraction, int))]

    if kind is Surd:
        ds = {v.d for v, _ in others}
        if len(ds) > 1:
            raise InvalidParameter(f"surds with different radicands {sorted(ds)}")
        d = ds.pop()
        a = rational + sum((c * v.a for v, c in others), Fraction(0))
        b = sum((c * v.b for v, c in others), Fraction(0))
        return surd(a, b, d)

    if kind is CyclotomicElement:
        ns = {v.n for v, _ in others}
        if len(ns) > 1:
            raise InvalidParameter(f"cyclotomic elements of different orders {sorted(ns)}")
        n = ns.pop()
        size = len(cyclotomic(2 * n).coeffs) - 1
        acc = [0] * size
        acc[0] += _normal(rational)
        for v, c in others:
            for k, x in enumerate(v.residue):
                acc[k] += c * x
        return CyclotomicElement.from_coeffs(n, acc)

    if kind is CubicRoot:
        polys = {v.minpoly for v, _ in others}
        if len(polys) > 1:
            raise InvalidParameter("cubic roots of different minimal polynomials")
        p = polys.pop()
        roots = cubic_roots(p)
        if len(roots) != 3:
            raise InvalidParameter("cubic conjugate arithmetic needs three real roots")
        if rational_roots(p):
            raise InvalidParameter(f"{p} is reducible; conjugate arithmetic needs an irreducible cubic")
        slot = {(r.lo, r.hi): i for i, r in enumerate(roots)}
        per_root = [Fraction(0)] * 3
        for v, c in others:
            idx = _locate_root(v, roots, slot)
            per_root[idx] += c
        # theta_3 = trace - theta_1 - theta_2, trace = -coeff of x^2.
        trace = Fraction(-p.coeffs[2], p.coeffs[3])
        const = rational + per_root[2] * trace
        return _combination_or_rational(p, const, (per_root[0] - per_root[2], per_root[1] - per_root[2]))

    raise InvalidParameter(f"unsupported algebraic number type {kind.__name__}")


def _locate_root(v: CubicRoot, roots: list[CubicRoot], slot: dict) -> int:
    if (v.lo, v.hi) in slot:
        return slot[(v.lo, v.hi)]
    width = (v.hi - v.lo) / 4
    hits = []
    for i, r in enumerate(roots):
        lo, hi = r.refine(width)
        if v.lo < lo and hi <= v.hi:
            hits.append(i)
    if len(hits) != 1:
        raise InvalidParameter("interval does not isolate a root of the minimal polynomial")
    return hits[0]


def _normal(c):
    """Keep integral coefficients as ints; Fraction arithmetic is far slower."""
    c = Fraction(c) if not isinstance(c, (int, Fraction)) else c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _combination_or_rational(p, const, coeffs):
    if not any(coeffs):
        return const
    return ConjugateCombination(p, const, coeffs)
