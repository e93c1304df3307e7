"""Strong cospectrality, eigenvalue support partitions and exact relation lattices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import mpmath
import numpy as np

from .errors import InternalInconsistency, InvalidParameter
from .exact import (
    CyclotomicElement,
    IntMatrix,
    Surd,
    approx,
    cubic_reducibility,
    cyclotomic,
    exact_linear_combination,
    hnf,
    integer_kernel,
    is_zero,
    poly_divmod,
    relation_poly,
)
from .exact.poly import reduce_mod
from .graphs import double_star_labels
from .spectral import BALANCED, PENDANT_PAIR, SpectralDecomposition, double_star_spectrum

NUMERIC_TOL = 1e-8


@dataclass(frozen=True)
class SupportPartition:
    """Signs of E_r e_a against E_r e_b for every eigenvalue label r.

    0: both vanish; +1: equal and nonzero; -1: opposite and nonzero.
    """

    pair: tuple[int, int]
    signs: tuple[tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, pair, sign_of: Mapping[int, int]) -> "SupportPartition":
        return cls(tuple(pair), tuple(sorted((int(k), int(v)) for k, v in sign_of.items())))

    @property
    def sign_of(self) -> dict[int, int]:
        return dict(self.signs)

    def _with(self, s):
        return [r for r, v in self.signs if v == s]

    @property
    def phi0(self) -> list[int]:
        return self._with(0)

    @property
    def phi_plus(self) -> list[int]:
        return self._with(1)

    @property
    def phi_minus(self) -> list[int]:
        return self._with(-1)

    def to_json(self) -> dict:
        return {"phi0": self.phi0, "phi_plus": self.phi_plus, "phi_minus": self.phi_minus}


@dataclass(frozen=True)
class RelationLattice:
    """Integer relations among the supported nonzero eigenvalues.

    ``basis`` rows are coefficient vectors over ``support_indices`` (labels);
    ``values`` are the matching exact eigenvalues used to verify each row.
    """

    support_indices: tuple[int, ...]
    values: tuple
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def verify(self) -> bool:
        return all(is_zero(exact_linear_combination(self.values, row)) for row in self.basis)


def strong_cospectral(
    sd: SpectralDecomposition, a: int, b: int, tol: float = NUMERIC_TOL
) -> Optional[SupportPartition]:
    """Numeric support partition of (a, b), or None if they are not strongly cospectral."""
    if a == b:
        raise InvalidParameter("strong cospectrality needs two distinct vertices")
    n = sd.order
    if not (1 <= a <= n and 1 <= b <= n):
        raise InvalidParameter(f"vertices must lie in 1..{n}")
    signs = {}
    for label, E in zip(sd.labels, sd.projectors):
        ea, eb = E[:, a - 1], E[:, b - 1]
        scale = max(1.0, float(np.abs(E).max()))
        if np.linalg.norm(ea) < tol and np.linalg.norm(eb) < tol:
            signs[label] = 0
        elif np.linalg.norm(ea - eb) < tol * scale:
            signs[label] = 1
        elif np.linalg.norm(ea + eb) < tol * scale:
            signs[label] = -1
        else:
            return None
    return SupportPartition.from_mapping((a, b), signs)


def path_support_partition(n: int, a: int) -> SupportPartition:
    """Exact partition for the mirror pair (a, n+1-a) of P_n, keyed by path index r."""
    if not 1 <= a <= n:
        raise InvalidParameter(f"vertex {a} outside 1..{n}")
    b = n + 1 - a
    if a == b:
        raise InvalidParameter(f"vertex {a} is the centre of P_{n} and has no mirror partner")
    signs = {0: 1}
    for r in range(1, n):
        vanishes = ((2 * a - 1) * r) % (2 * n) == 0
        if n % 2 == 0:
            signs[r] = -1 if r % 2 else (0 if vanishes else 1)
        else:
            signs[r] = 1 if r % 2 else (0 if vanishes else -1)
    return SupportPartition.from_mapping((a, b), signs)


def double_star_pair(m: int, shape: str) -> tuple[int, int]:
    """The designated vertex pair: centers of S(m, m), or the pendant pair of S(m, 2)."""
    if shape == BALANCED:
        lab = double_star_labels(m, m)
        return lab["second_center"], lab["first_center"]
    if shape == PENDANT_PAIR:
        lab = double_star_labels(m, 2)
        return tuple(lab["second_pendants"])
    raise InvalidParameter(f"unknown double-star shape {shape!r}")


def double_star_support_partition(m: int, shape: str, sd: SpectralDecomposition | None = None) -> SupportPartition:
    """Exact partition for the designated pair, keyed by labels of :func:`double_star_spectrum`."""
    sd = double_star_spectrum(m, shape) if sd is None else sd
    signs = {}
    for label, val in zip(sd.labels, sd.exact_values):
        if val == 0:
            signs[label] = 1
        elif val == 1:
            signs[label] = 0 if shape == BALANCED else -1
        elif shape == BALANCED:
            signs[label] = 1 if isinstance(val, Fraction) else -1
        else:
            signs[label] = 1
    return SupportPartition.from_mapping(double_star_pair(m, shape), signs)


def _support(sp: SupportPartition, zero_labels: Sequence[int]) -> list[int]:
    return [r for r, s in sp.signs if s != 0 and r not in zero_labels]


def relation_lattice_path(n: int, sp: SupportPartition) -> RelationLattice:
    """Relations among supported path eigenvalues, via reduction modulo Psi_2n.

    mu_j is represented by the residue of 2 + x^j + x^(2n-j); an integer
    combination vanishes iff the combined residue is zero.
    """
    support = _support(sp, zero_labels=[0])
    if any(not 1 <= r < n for r in support):
        raise InvalidParameter("partition labels do not match P_n")
    psi = cyclotomic(2 * n)
    width = psi.degree
    coords = []
    for j in support:
        poly = [0] * (2 * n)
        poly[0] += 2
        poly[j] += 1
        poly[2 * n - j] += 1
        res = list(reduce_mod(poly, psi))
        coords.append(res + [0] * (width - len(res)))
    basis = integer_kernel(IntMatrix(tuple(tuple(c) for c in coords), width)) if support else IntMatrix((), 0)
    for row in basis:
        full = [0] * (n - 1)
        for j, c in zip(support, row):
            full[j - 1] = c
        _, rem = poly_divmod(relation_poly(n, full), psi)
        if not rem.is_zero():
            raise InternalInconsistency(f"lattice row {row} is not a relation for P_{n}")
    values = tuple(CyclotomicElement.path_eigenvalue(n, j) for j in support)
    return RelationLattice(tuple(support), values, basis)


def _quadratic_coordinates(values) -> IntMatrix:
    """Integer coordinates over (1, sqrt(D)) after per-column clearing of denominators."""
    ds = {v.d for v in values if isinstance(v, Surd)}
    if len(ds) > 1:
        raise InvalidParameter("values span more than one quadratic field")
    rat = [v.a if isinstance(v, Surd) else Fraction(v) for v in values]
    irr = [v.b if isinstance(v, Surd) else Fraction(0) for v in values]
    cols = []
    for col in (rat, irr):
        den = math.lcm(*(x.denominator for x in col)) if col else 1
        cols.append([int(x * den) for x in col])
    return IntMatrix(tuple(zip(*cols)), 2)


def relation_lattice_double_star(m: int, shape: str, sp: SupportPartition) -> RelationLattice:
    """Relations among the supported double-star eigenvalues for the designated pair.

    Quadratic spectra (all balanced stars, and S(2, 2)) use the kernel of the
    coordinate matrix over (1, sqrt(D)). For an irreducible cubic p_m the only
    relations are multiples of ``sum theta_i - (m+6) * 1 = 0``: conjugate roots
    of an irreducible cubic together with 1 span a 3-dimensional Q-space, so a
    relation forces equal root coefficients and then the trace fixes the rest.
    """
    sd = double_star_spectrum(m, shape)
    support = _support(sp, zero_labels=[lab for lab, v in zip(sd.labels, sd.exact_values) if v == 0])
    values = tuple(sd.exact(r) for r in support)
    if shape == BALANCED or (shape == PENDANT_PAIR and m == 2):
        basis = integer_kernel(_quadratic_coordinates(values))
    elif shape == PENDANT_PAIR:
        if cubic_reducibility(m) != "irreducible":
            raise InternalInconsistency(f"p_{m} is reducible although m != 2")
        gen = [-(m + 6) if v == 1 else 1 for v in values]
        if sorted(gen) != sorted([-(m + 6), 1, 1, 1]):
            raise InternalInconsistency(f"unexpected support for S({m},2): {values}")
        with mpmath.workdps(60):
            residual = abs(sum(c * approx(v, 60) for c, v in zip(gen, values)))
        if residual >= mpmath.mpf("1e-20"):
            raise InternalInconsistency(f"trace relation fails numerically: {residual}")
        basis = hnf([gen], len(gen))
    else:
        raise InvalidParameter(f"unknown double-star shape {shape!r}")
    lattice = RelationLattice(tuple(support), values, basis)
    if not lattice.verify():
        raise InternalInconsistency(f"unverifiable relation lattice for S({m}, {shape})")
    return lattice
