"""Small number-theory utilities: factoring by trial division, squares, cubic reducibility."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import InvalidParameter
from .poly import IntPolynomial, poly_divmod


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division."""
    if n < 1:
        raise InvalidParameter(f"cannot factor {n}")
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, l) when n = p**l for a prime p and l >= 1, else None."""
    if n < 2:
        raise InvalidParameter(f"prime_power needs n >= 2, got {n}")
    f = factorize(n)
    if len(f) == 1:
        ((p, l),) = f.items()
        return p, l
    return None


def is_perfect_square(k: int) -> bool:
    if k < 0:
        return False
    r = math.isqrt(k)
    return r * r == k


def squarefree_decomposition(d: int) -> tuple[int, int]:
    """(s, f) with d = s**2 * f and f square-free."""
    if d < 1:
        raise InvalidParameter(f"expected a positive integer, got {d}")
    s, f = 1, 1
    for p, e in factorize(d).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


def divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: IntPolynomial) -> list[Fraction]:
    """Rational roots of an integer polynomial (rational root theorem)."""
    if p.degree < 1:
        return []
    c = list(p.coeffs)
    roots = []
    if c[0] == 0:
        roots.append(Fraction(0))
        while c and c[0] == 0:
            c.pop(0)
    if len(c) < 2:
        return roots
    q = IntPolynomial(c)
    for num in divisors(c[0]):
        for den in divisors(c[-1]):
            for s in (1, -1):
                x = Fraction(s * num, den)
                if q(x) == 0 and x not in roots:
                    roots.append(x)
    return sorted(roots)


def double_star_cubic(m: int) -> IntPolynomial:
    """x^3 - (m+6)x^2 + (4m+9)x - (m+4): the non-trivial Laplacian factor of S(m,2)."""
    if m < 1:
        raise InvalidParameter(f"m must be positive, got {m}")
    return IntPolynomial([-(m + 4), 4 * m + 9, -(m + 6), 1])


def cubic_reducibility(m: int):
    """``"irreducible"`` or ``(root, quadratic)`` for the double-star cubic p_m.

    A monic integer cubic is reducible over Q iff it has an integer root, which
    must divide the constant term m+4.
    """
    p = double_star_cubic(m)
    for d in divisors(m + 4):
        for r in (d, -d):
            if p(r) == 0:
                q, rem = poly_divmod(p, IntPolynomial([-r, 1]))
                assert rem.is_zero()
                return r, q
    return "irreducible"
