"""Dense univariate polynomials with exact (big integer / rational) coefficients.

Coefficients are stored in ascending degree order; trailing zeros are
stripped so the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import InvalidParameter


def _trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Polynomial with integer coefficients, ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for x in c:
            if not isinstance(x, int):
                raise InvalidParameter(f"non-integer coefficient {x!r}")
        self.coeffs = c

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k > 0) else str(mag)
            if k == 1:
                body += "x"
            elif k > 1:
                body += f"x^{k}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, _coerce(other))

    def __call__(self, x):
        """Horner evaluation at any ring element supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot treat {type(p).__name__} as IntPolynomial")


def _divmod_coeffs(f: Sequence, g: Sequence, integral: bool):
    """Long division on coefficient lists (ascending). Returns (q, r) lists."""
    r = list(f)
    dg = len(g) - 1
    lead = g[-1]
    if len(r) <= dg:
        return [], _trim(r)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        top = r[k + dg]
        if top == 0:
            continue
        if lead == 1:
            c = top
        elif integral:
            if top % lead:
                raise InvalidParameter(
                    "quotient is not integral: leading coefficient "
                    f"{lead} does not divide {top}"
                )
            c = top // lead
        else:
            c = Fraction(top) / lead
        q[k] = c
        for i, gc in enumerate(g):
            r[k + i] -= c * gc
    return _trim(q), _trim(r[:dg])


def poly_divmod(f: IntPolynomial, g: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Exact division ``f = g*q + r`` with ``deg r < deg g``.

    A non-monic divisor is accepted only while every quotient coefficient
    stays integral.
    """
    if g.is_zero():
        raise InvalidParameter("division by the zero polynomial")
    q, r = _divmod_coeffs(f.coeffs, g.coeffs, integral=True)
    return IntPolynomial(q), IntPolynomial(r)


def reduce_mod(coeffs: Sequence, modulus: IntPolynomial) -> tuple:
    """Remainder of a rational-coefficient polynomial modulo a monic integer polynomial."""
    if not modulus.is_monic():
        raise InvalidParameter("reduction modulus must be monic")
    _, r = _divmod_coeffs(coeffs, modulus.coeffs, integral=True)
    return r


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> IntPolynomial:
    """The k-th cyclotomic polynomial, by dividing x^k - 1 by Psi_d for d | k, d < k."""
    if k < 1:
        raise InvalidParameter(f"cyclotomic index must be positive, got {k}")
    f = IntPolynomial.monomial(k) - 1
    for d in range(1, k):
        if k % d == 0:
            f, r = poly_divmod(f, cyclotomic(d))
            if not r.is_zero():
                raise AssertionError(f"Psi_{d} does not divide x^{k}-1")
    return f


def relation_poly(n: int, l: Sequence[int]) -> IntPolynomial:
    """The polynomial 2*sum(l) + sum l_j x^j + sum l_j x^(2n-j), j = 1..n-1.

    Its value at a primitive 2n-th root of unity is sum l_j * mu_j for the
    path eigenvalues mu_j = 2 + 2cos(j*pi/n).
    """
    if len(l) != n - 1:
        raise InvalidParameter(f"relation vector must have length {n - 1}, got {len(l)}")
    coeffs = [0] * (2 * n)
    coeffs[0] = 2 * sum(l)
    for j, lj in enumerate(l, start=1):
        coeffs[j] += lj
        coeffs[2 * n - j] += lj
    return IntPolynomial(coeffs)


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while len(seq[-1]) > 1:
        _, r = _divmod_coeffs(seq[-2], seq[-1], integral=False)
        if not r:
            break
        seq.append([-c for c in r])
    return seq


def _eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign_changes(seq, x) -> int:
    signs = [v for v in (_eval(s, x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def isolate_real_roots(p: IntPolynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi], one per distinct real root, ascending.

    Sturm-sequence bisection; endpoints are never roots.
    """
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    bound = 1 + max(Fraction(abs(c), abs(p.leading)) for c in p.coeffs[:-1])
    out = []

    def count(lo, hi):
        return _sign_changes(seq, lo) - _sign_changes(seq, hi)

    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = count(lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _eval(p.coeffs, mid) == 0:
            eps = (hi - lo) / 1024
            while _eval(p.coeffs, mid - eps) == 0 or _eval(p.coeffs, mid + eps) == 0:
                eps /= 2
            out.append((mid - eps, mid + eps))
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    out.sort()
    return out


def refine_root(p: IntPolynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of a simple root until hi - lo <= width."""
    flo = _eval(p.coeffs, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = _eval(p.coeffs, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi
