import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from pgfr.errors import InvalidParameter
from pgfr.exact import cyclotomic, exact_linear_combination, is_zero, poly_divmod, relation_poly, solve_in_lattice, surd
from pgfr.spectral import BALANCED, PENDANT_PAIR, double_star_spectrum, eigendecompose, path_spectrum
from pgfr.graphs import laplacian, make_double_star
from pgfr.support import (
    double_star_support_partition,
    path_support_partition,
    relation_lattice_double_star,
    relation_lattice_path,
    strong_cospectral,
)


def test_partition_examples():
    sp = path_support_partition(3, 1)
    assert (sp.phi_plus, sp.phi_minus, sp.phi0) == ([0, 1], [2], [])
    sp = path_support_partition(6, 2)
    assert (sp.phi0, sp.phi_plus, sp.phi_minus) == ([4], [0, 2], [1, 3, 5])
    sp = path_support_partition(6, 1)
    assert (sp.phi0, sp.phi_plus, sp.phi_minus) == ([], [0, 2, 4], [1, 3, 5])
    assert sp.pair == (1, 6)


def test_partition_rejects_centre():
    with pytest.raises(InvalidParameter):
        path_support_partition(9, 5)
    with pytest.raises(InvalidParameter):
        path_support_partition(4, 5)


def test_strong_cospectral_p5():
    sd = path_spectrum(5)
    assert strong_cospectral(sd, 1, 5) is not None
    assert strong_cospectral(sd, 1, 4) is None
    with pytest.raises(InvalidParameter):
        strong_cospectral(sd, 2, 2)


@pytest.mark.parametrize("n", range(2, 41))
def test_exact_and_numeric_partitions_agree(n):
    sd = path_spectrum(n)
    for a in range(1, n + 1):
        if 2 * a != n + 1:
            assert strong_cospectral(sd, a, n + 1 - a) == path_support_partition(n, a)


@pytest.mark.parametrize("n", range(2, 21))
def test_strong_cospectrality_only_mirror_pairs(n):
    sd = eigendecompose(laplacian_path(n))
    for a, b in itertools.combinations(range(1, n + 1), 2):
        assert (strong_cospectral(sd, a, b) is not None) == (a + b == n + 1)


def laplacian_path(n):
    from pgfr.graphs import make_path

    return laplacian(make_path(n))


def test_balanced_centers_partition():
    for m in range(1, 8):
        sd = double_star_spectrum(m, BALANCED)
        sp = double_star_support_partition(m, BALANCED, sd)
        values = {r: sd.exact(r) for r in sd.labels}
        assert {values[r] for r in sp.phi0} == ({Fraction(1)} if m > 1 else set())
        assert {values[r] for r in sp.phi_plus} == {0, m + 1}
        d = m * m + 6 * m + 1
        assert {values[r] for r in sp.phi_minus} == {surd(Fraction(m + 3, 2), Fraction(s, 2), d) for s in (1, -1)}
        assert strong_cospectral(sd, *sp.pair) == sp


def test_pendant_pair_partition_matches_numeric():
    for m in range(1, 11):
        sd = double_star_spectrum(m, PENDANT_PAIR)
        sp = double_star_support_partition(m, PENDANT_PAIR, sd)
        assert sp.pair == (1, 2)
        assert [sd.exact(r) for r in sp.phi_minus] == [1]
        num = eigendecompose(laplacian(make_double_star(m, 2)))
        assert strong_cospectral(num, 1, 2) == sp


def test_path_lattice_examples():
    rl = relation_lattice_path(6, path_support_partition(6, 1))
    assert solve_in_lattice(rl.basis, [0, -1, 1, 1, 0]) is not None
    rl = relation_lattice_path(4, path_support_partition(4, 1))
    assert rl.support_indices == (1, 2, 3)
    assert rl.basis.tolist() in ([[1, -2, 1]], [[-1, 2, -1]])
    rl = relation_lattice_path(2, path_support_partition(2, 1))
    assert rl.rank == 0 and rl.support_indices == (1,)


def test_path_lattice_rows_verify():
    for n in range(2, 33):
        for a in range(1, (n + 1) // 2 + 1):
            if 2 * a == n + 1:
                continue
            sp = path_support_partition(n, a)
            rl = relation_lattice_path(n, sp)
            assert 0 not in rl.support_indices and not set(sp.phi0) & set(rl.support_indices)
            assert rl.verify()
            for row in rl.basis:
                full = [0] * (n - 1)
                for j, c in zip(rl.support_indices, row):
                    full[j - 1] = c
                assert poly_divmod(relation_poly(n, full), cyclotomic(2 * n))[1].is_zero()


def _candidate_vectors(k, n):
    """All of [-3, 3]^k for n <= 9; vectors with at most three nonzero entries beyond that."""
    if n <= 9:
        return np.indices((7,) * k).reshape(k, -1).T - 3
    out = []
    for size in (1, 2, 3):
        for pos in itertools.combinations(range(k), size):
            for vals in itertools.product([c for c in range(-3, 4) if c], repeat=size):
                v = [0] * k
                for p, c in zip(pos, vals):
                    v[p] = c
                out.append(v)
    return np.array(out)


@pytest.mark.parametrize("n", range(2, 21))
@pytest.mark.parametrize("a", [1, 2])
def test_path_lattice_completeness(n, a):
    if 2 * a >= n + 1:
        pytest.skip("no mirror pair")
    sp = path_support_partition(n, a)
    rl = relation_lattice_path(n, sp)
    k = len(rl.support_indices)
    mu = np.array([2 + 2 * math.cos(j * math.pi / n) for j in rl.support_indices])
    V = _candidate_vectors(k, n)
    hits = V[np.abs(V @ mu) < 1e-9]
    if n <= 9:
        assert len(hits) >= 1  # the zero vector at least
    for v in hits:
        full = [0] * (n - 1)
        for j, c in zip(rl.support_indices, v):
            full[j - 1] = int(c)
        assert poly_divmod(relation_poly(n, full), cyclotomic(2 * n))[1].is_zero()
        assert solve_in_lattice(rl.basis, [int(c) for c in v]) is not None, v


def test_s22_pendant_lattice():
    rl = relation_lattice_double_star(2, PENDANT_PAIR, double_star_support_partition(2, PENDANT_PAIR))
    r17 = math.sqrt(17)
    named = {"1": 1.0, "3": 3.0, "mu+": (5 + r17) / 2, "mu-": (5 - r17) / 2}
    pos = {k: min(range(4), key=lambda i: abs(float(rl.values[i]) - v)) for k, v in named.items()}

    def embed(c1, c3, cp, cm):
        v = [0] * 4
        v[pos["1"]], v[pos["3"]], v[pos["mu+"]], v[pos["mu-"]] = c1, c3, cp, cm
        return v

    assert rl.rank == 2
    for v in ([1, 3, -2, -2], [-3, 1, 0, 0], [-5, 0, 1, 1]):
        assert solve_in_lattice(rl.basis, embed(*v)) is not None
    # both generators of the expected lattice are in ours and vice versa (equal lattices)
    ref = [embed(-3, 1, 0, 0), embed(-5, 0, 1, 1)]
    from pgfr.exact import hnf

    assert hnf(ref, 4) == rl.basis


@pytest.mark.parametrize("m", [1, 3, 4, 7, 10])
def test_pendant_pair_single_generator(m):
    rl = relation_lattice_double_star(m, PENDANT_PAIR, double_star_support_partition(m, PENDANT_PAIR))
    assert rl.rank == 1
    assert sorted(rl.basis[0]) == sorted([1, 1, 1, -(m + 6)])
    assert is_zero(exact_linear_combination(rl.values, rl.basis[0]))


def test_balanced_lattice_m3():
    rl = relation_lattice_double_star(3, BALANCED, double_star_support_partition(3, BALANCED))
    assert rl.rank == 1
    row = dict(zip((float(v) for v in rl.values), rl.basis[0]))
    coeff_m1 = row.pop(4.0)
    assert sorted([abs(coeff_m1)] + [abs(c) for c in row.values()]) == [2, 2, 3]
    assert coeff_m1 * sum(row.values()) < 0


def test_balanced_lattices_verify():
    for m in range(1, 11):
        sp = double_star_support_partition(m, BALANCED)
        rl = relation_lattice_double_star(m, BALANCED, sp)
        assert rl.rank == 1 and rl.verify()
        g = math.gcd(m + 1, m + 3)
        assert sorted(abs(c) for c in rl.basis[0]) == sorted([(m + 3) // g, (m + 1) // g, (m + 1) // g])
