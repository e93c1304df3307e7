"""Exact PGFR/PGST decisions from a support partition and relation lattice,
closed-form classifiers for paths and double stars, and explicit witnesses."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InternalInconsistency, InvalidParameter
from .exact import IntMatrix, cyclotomic, factorize, poly_divmod, prime_power, relation_poly, solve_in_lattice, xgcd
from .graphs import double_star_labels, laplacian, make_double_star
from .spectral import BALANCED, PENDANT_PAIR, eigendecompose
from .support import (
    RelationLattice,
    SupportPartition,
    double_star_support_partition,
    strong_cospectral,
    path_support_partition,
    relation_lattice_double_star,
    relation_lattice_path,
)

PGFR_PROPER = "pgfr-proper"
PGST = "pgst"
NO_PGFR = "no-pgfr"
NOT_STRONGLY_COSPECTRAL = "not-strongly-cospectral"


@dataclass(frozen=True)
class PGFRCertificate:
    decision: str
    gcd_value: int
    witness: Optional[tuple[int, ...]] = None
    support: Optional[SupportPartition] = None
    basis: Optional[IntMatrix] = None
    support_indices: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "decision": self.decision,
            "gcd": self.gcd_value,
            "witness": list(self.witness) if self.witness is not None else None,
            "support": self.support.to_json() if self.support is not None else None,
            "basis": self.basis.tolist() if self.basis is not None else [],
        }


def phi_minus_sum(sp: SupportPartition, indices, l) -> int:
    minus = set(sp.phi_minus)
    return sum(c for r, c in zip(indices, l) if r in minus)


def certify(sp: SupportPartition, rl: RelationLattice) -> PGFRCertificate:
    """Decide proper PGFR (and PGST) by the gcd of the Phi^- sum over the lattice.

    The values taken by the Phi^- coefficient sum on the lattice form gZ, so
    the sum avoids +-1 iff g != 1, and is always even iff g is 0 or even.
    """
    if not rl.verify():
        raise InternalInconsistency("relation lattice contains a row that is not an exact relation")
    idx = rl.support_indices
    fvals = [phi_minus_sum(sp, idx, row) for row in rl.basis]
    g = 0
    for f in fvals:
        g = math.gcd(g, f)
    witness = None
    if g == 1:
        # Extended-gcd bookkeeping: combine rows so the functional equals 1.
        coeffs, acc = [], 0
        for f in fvals:
            x, y, acc_new = xgcd(acc, f)
            coeffs = [c * x for c in coeffs] + [y]
            acc = acc_new
        w = [sum(c * row[k] for c, row in zip(coeffs, rl.basis)) for k in range(len(idx))]
        if phi_minus_sum(sp, idx, w) != 1 or solve_in_lattice(rl.basis, w) is None:
            raise InternalInconsistency("witness extraction failed")
        witness = tuple(w)
        decision = NO_PGFR
    elif g == 0 or g % 2 == 0:
        decision = PGST
    else:
        decision = PGFR_PROPER
    return PGFRCertificate(decision, g, witness, sp, rl.basis, tuple(idx))


def not_cospectral_certificate() -> PGFRCertificate:
    return PGFRCertificate(NOT_STRONGLY_COSPECTRAL, 0)


def certify_path(n: int, a: int, b: Optional[int] = None) -> PGFRCertificate:
    """Certificate for P_n at (a, b); b defaults to the mirror vertex n+1-a."""
    if not 1 <= a <= n:
        raise InvalidParameter(f"vertex {a} outside 1..{n}")
    b = n + 1 - a if b is None else b
    if not 1 <= b <= n or a == b:
        raise InvalidParameter(f"invalid partner {b} for vertex {a} in P_{n}")
    if a + b != n + 1:
        return not_cospectral_certificate()
    sp = path_support_partition(n, a)
    return certify(sp, relation_lattice_path(n, sp))


def certify_double_star_family(m: int, shape: str) -> PGFRCertificate:
    """Certificate for the centers of S(m, m) or the pendant pair of S(m, 2)."""
    sp = double_star_support_partition(m, shape)
    return certify(sp, relation_lattice_double_star(m, shape, sp))


DOUBLE_STAR_TAGS = ("centers", "pendant-pair", "p4-extremal")


def double_star_candidates(m: int, n: int) -> list[tuple[str, tuple[int, int]]]:
    """Vertex pairs of S(m, n) examined by sweeps: the centers, two pendants at
    each center with at least two of them, and the ends when S(1, 1) = P_4."""
    lab = double_star_labels(m, n)
    out = [("centers", (lab["second_center"], lab["first_center"]))]
    if n >= 2:
        out.append(("pendant-pair", pendant_pair_at(m, n, "second")))
    if m >= 2:
        out.append(("pendant-pair", pendant_pair_at(m, n, "first")))
    if m == n == 1:
        out.append(("p4-extremal", (lab["second_pendants"][0], lab["first_pendants"][0])))
    return out


def certify_double_star_pair(m: int, n: int, pair: tuple[int, int]) -> PGFRCertificate:
    """Certificate for an arbitrary vertex pair of S(m, n).

    Pairs in the exactly handled families use closed-form lattices; any other
    pair must fail the numeric strong cospectrality test, otherwise no exact
    lattice is available and InternalInconsistency is raised.
    """
    if m < 1 or n < 1:
        raise InvalidParameter(f"double star needs m, n >= 1, got ({m}, {n})")
    a, b = pair
    size = m + n + 2
    if a == b or not (1 <= a <= size and 1 <= b <= size):
        raise InvalidParameter(f"invalid vertex pair {pair} for S({m},{n})")
    lab = double_star_labels(m, n)
    key = frozenset(pair)
    centers = frozenset((lab["second_center"], lab["first_center"]))
    if key == centers and m == n:
        return _relabel(certify_double_star_family(m, BALANCED), pair)
    if m == n == 1 and key == frozenset((1, 4)):
        return _relabel(certify_path(4, 1), pair)
    for side, count, other in (("second", n, m), ("first", m, n)):
        if count == 2 and key == frozenset(lab[f"{side}_pendants"]):
            return _relabel(certify_double_star_family(other, PENDANT_PAIR), pair)
    sd = eigendecompose(laplacian(make_double_star(m, n)))
    if strong_cospectral(sd, a, b) is None:
        return not_cospectral_certificate()
    raise InternalInconsistency(f"pair {pair} of S({m},{n}) is strongly cospectral but has no exact lattice")


def _relabel(cert: PGFRCertificate, pair) -> PGFRCertificate:
    sp = SupportPartition(tuple(pair), cert.support.signs)
    return PGFRCertificate(cert.decision, cert.gcd_value, cert.witness, sp, cert.basis, cert.support_indices)


# -- closed-form classifiers -------------------------------------------------


def classify_path(n: int, a: int) -> str:
    """``"yes"``, ``"no"`` or ``"no-pair"`` for PGFR between a and n+1-a in P_n."""
    if n < 1 or not 1 <= a <= n:
        raise InvalidParameter(f"vertex {a} outside 1..{n}")
    if 2 * a == n + 1:
        return "no-pair"
    if prime_power(n) is not None:
        return "yes"
    if n % 2 == 0:
        half = prime_power(n // 2) if n // 2 >= 2 else None
        if half is not None and half[0] != 2:
            q = n // 2
            return "yes" if a in ((q + 1) // 2, (3 * q + 1) // 2) else "no"
    return "no"


@dataclass(frozen=True)
class PairClaim:
    tag: str
    pair: tuple[int, int]
    phenomenon: str  # pgst, pgfr or none


@dataclass(frozen=True)
class DoubleStarClassification:
    m: int
    n: int
    claims: tuple[PairClaim, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "pairs": [{"tag": c.tag, "pair": list(c.pair), "phenomenon": c.phenomenon} for c in self.claims],
        }


def pendant_pair_at(m: int, n: int, center: str) -> tuple[int, int]:
    """First two pendants of the ``"first"`` or ``"second"`` center of S(m, n)."""
    pend = double_star_labels(m, n)[f"{center}_pendants"]
    if len(pend) < 2:
        raise InvalidParameter(f"the {center} center of S({m},{n}) has fewer than two pendants")
    return pend[0], pend[1]


def classify_double_star(m: int, n: int) -> DoubleStarClassification:
    """Pairs of S(m, n) admitting Laplacian PGFR, with the phenomenon observed."""
    if m < 1 or n < 1:
        raise InvalidParameter(f"double star needs m, n >= 1, got ({m}, {n})")
    lab = double_star_labels(m, n)
    centers = (lab["second_center"], lab["first_center"])
    claims = []
    if m == n:
        claims.append(PairClaim("centers", centers, "pgst"))
    if m == n == 1:
        claims.append(PairClaim("p4-extremal", (lab["second_pendants"][0], lab["first_pendants"][0]), "pgst"))
    if m == n == 2:
        for side in ("second", "first"):
            claims.append(PairClaim("pendant-pair", pendant_pair_at(m, n, side), "none"))
    elif 2 in (m, n) and m != n:
        side = "second" if n == 2 else "first"
        claims.append(PairClaim("pendant-pair", pendant_pair_at(m, n, side), "pgfr"))
    return DoubleStarClassification(m, n, tuple(claims))


def phenomenon_agrees(phenomenon: str, decision: str) -> bool:
    """Whether a classifier phenomenon matches a certificate decision; PGST counts as proper PGFR."""
    if phenomenon == "pgst":
        return decision == PGST
    if phenomenon == "pgfr":
        return decision in (PGFR_PROPER, PGST)
    return decision in (NO_PGFR, NOT_STRONGLY_COSPECTRAL)


def path_agrees(verdict: str, decision: str) -> bool:
    if verdict == "yes":
        return decision in (PGFR_PROPER, PGST)
    return decision in (NO_PGFR, NOT_STRONGLY_COSPECTRAL)


# -- explicit negative witnesses for paths -----------------------------------


def _alternating(n: int, l: list, k: int, m: int, s: int, sign: int = 1, start: int = 0):
    for j in range(start, m):
        if k * j + s:
            l[k * j + s - 1] += sign * (-1) ** j


def _odd_multiples(n: int, l: list, k: int, m: int, coeff: int):
    for j in range((m - 3) // 2 + 1):
        l[(2 * j + 1) * k - 1] += coeff


def alternating_identity(k: int, m: int, s: int = 0) -> tuple[list[int], int]:
    """Coefficients over mu_1..mu_{km-1} and the constant c of an alternating identity, m odd >= 3.

    s = 0: sum_{j=1}^{m-1} (-1)^j mu_{kj} = -2;
    1 <= s <= k-1: sum_{j=0}^{m-1} (-1)^j mu_{kj+s} = 2.
    """
    if m < 3 or m % 2 == 0 or k < 1 or not 0 <= s < k:
        raise InvalidParameter(f"need odd m >= 3 and 0 <= s < k, got k={k}, m={m}, s={s}")
    l = [0] * (k * m - 1)
    _alternating(k * m, l, k, m, s, start=1 if s == 0 else 0)
    return l, (-2 if s == 0 else 2)


def odd_multiple_identity(k: int, m: int) -> tuple[list[int], int]:
    """sum_{j=0}^{(m-3)/2} mu_{(2j+1)k} = m over P_{km}, m odd >= 3."""
    if m < 3 or m % 2 == 0 or k < 1:
        raise InvalidParameter(f"need odd m >= 3 and k >= 1, got k={k}, m={m}")
    l = [0] * (k * m - 1)
    _odd_multiples(k * m, l, k, m, 1)
    return l, m


def identity_holds_exactly(n: int, l: Sequence[int], const: int) -> bool:
    """sum l_j mu_j == const, decided by divisibility of L(x) - const by Psi_2n."""
    _, rem = poly_divmod(relation_poly(n, l) - const, cyclotomic(2 * n))
    return rem.is_zero()


def identity_residual(n: int, l: Sequence[int], const: int) -> float:
    return abs(sum(c * (2.0 + 2.0 * math.cos(j * math.pi / n)) for j, c in enumerate(l, start=1)) - const)


def negative_witness_path(n: int, a: int) -> list[int]:
    """Integer relation over mu_1..mu_{n-1} ruling out PGFR between a and n+1-a.

    Dispatch by the shape of n: 2p^l, 2hq (h, q odd, coprime), 2^l m (l >= 2),
    then odd with two or more prime factors. The vector is verified by
    divisibility of its relation polynomial by Psi_2n, has Phi^- sum +-1 and
    vanishes on Phi^0.
    """
    if classify_path(n, a) != "no":
        raise InvalidParameter(f"(n={n}, a={a}) is not a negative instance")
    l = [0] * (n - 1)
    two = factorize(n).get(2, 0)
    odd = n >> two
    if two == 1 and len(factorize(odd)) == 1:
        p, e = prime_power(odd)
        if e == 1:
            # sum_{j=1}^{p-1} (-1)^j mu_{2j} + mu_p = 0
            for j in range(1, p):
                l[2 * j - 1] += (-1) ** j
            l[p - 1] += 1
        else:
            # sum_{j=0}^{p-1} (-1)^j mu_{2p^(e-1) j + 2} - mu_{p^e} = 0
            _alternating(n, l, 2 * p ** (e - 1), p, 2)
            l[odd - 1] -= 1
    elif two == 1:
        p1 = min(factorize(odd))
        h = p1 ** factorize(odd)[p1]
        q = odd // h
        s, t, _ = xgcd(q, h)
        l[h * q - 1] += 1
        _odd_multiples(n, l, 2 * h, q, -2 * s)
        _odd_multiples(n, l, 2 * q, h, -2 * t)
    elif two >= 2:
        # sum (-1)^j mu_{2^l j+1} - sum (-1)^j mu_{2^l j+2} = 0
        _alternating(n, l, 2**two, odd, 1)
        _alternating(n, l, 2**two, odd, 2, sign=-1)
    else:
        fac = factorize(n)
        common = math.gcd(n, 2 * a - 1)
        p1 = next(p for p in sorted(fac) if factorize(common).get(p, 0) < fac[p]) if common > 1 else min(fac)
        ph = max(p for p in fac if p != p1)
        k, kh = p1 ** fac[p1], ph ** fac[ph]
        mm = n // k
        _alternating(n, l, k, mm, 1)
        _alternating(n, l, k, mm, 2)
        s, t, _ = xgcd(k, kh)
        _odd_multiples(n, l, n // k, k, -4 * s)
        _odd_multiples(n, l, n // kh, kh, -4 * t)
    _verify_path_witness(n, a, l)
    return l


def _verify_path_witness(n: int, a: int, l: list[int]) -> None:
    _, rem = poly_divmod(relation_poly(n, l), cyclotomic(2 * n))
    if not rem.is_zero():
        raise InternalInconsistency(f"witness for P_{n} is not divisible by Psi_{2 * n}")
    sp = path_support_partition(n, a)
    if any(l[r - 1] for r in sp.phi0):
        raise InternalInconsistency(f"witness for P_{n}, a={a} touches Phi^0")
    f = sum(l[r - 1] for r in sp.phi_minus)
    if abs(f) != 1:
        raise InternalInconsistency(f"witness for P_{n}, a={a} has Phi^- sum {f}")
