import json
import math

import numpy as np
import pytest

from pgfr.certify import certify_path
from pgfr.dynamics import (
    PhaseTarget,
    check_consistency,
    curve_rows,
    default_horizon,
    independent_columns,
    max_phase_error,
    pair_metrics,
    pgst_targets,
    phase_solve,
    revival_report,
    revival_targets,
    search_revival,
)
from pgfr.errors import InfeasibleTarget, InvalidParameter
from pgfr.exact import IntMatrix, hnf
from pgfr.graphs import laplacian, make_double_star, random_connected_graph
from pgfr.spectral import eigendecompose, path_spectrum


def test_report_at_time_zero():
    rep = revival_report(path_spectrum(5), 1, 5, 0.0)
    assert rep.at_a == pytest.approx(1.0, abs=1e-12)
    assert rep.cross < 1e-24 and rep.leakage == 0.0
    assert np.allclose(rep.block, np.eye(2))


def test_p2_perfect_transfer():
    rep = revival_report(path_spectrum(2), 1, 2, math.pi / 2)
    assert rep.cross == pytest.approx(1.0, abs=1e-12)
    assert abs(rep.leakage) < 1e-12


def test_p5_end_vertices_leak_somewhere():
    sd = path_spectrum(5)
    _, _, leak = pair_metrics(sd, 1, 5, np.linspace(0, 50, 2001))
    assert leak.max() > 0.5
    assert leak.min() >= -1e-12


def test_leakage_two_ways_agree():
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = random_connected_graph(int(rng.integers(3, 10)), rng)
        sd = eigendecompose(laplacian(g))
        a, b = (int(x) for x in rng.choice(np.arange(1, g.n + 1), size=2, replace=False))
        times = rng.uniform(0, 30, size=5)
        at_a, cross, leak = pair_metrics(sd, a, b, times)
        for t, x, y, z in zip(times, at_a, cross, leak):
            rep = revival_report(sd, a, b, float(t))
            assert abs(rep.leakage - z) < 1e-10
            assert abs(rep.at_a - x) < 1e-10 and abs(rep.cross - y) < 1e-10
            assert -1e-10 <= rep.leakage <= 1 + 1e-10


def test_metrics_reject_bad_pairs():
    sd = path_spectrum(4)
    with pytest.raises(InvalidParameter):
        revival_report(sd, 2, 2, 1.0)
    with pytest.raises(InvalidParameter):
        pair_metrics(sd, 1, 9, [0.0])


def test_curve_rows():
    rows = curve_rows(path_spectrum(4), 1, 4, 0.0, 50)
    assert len(rows) == 1 and rows[0][0] == 0.0
    assert np.allclose(rows[0], (0.0, 1.0, 0.0, 0.0), atol=1e-12)
    rows = curve_rows(path_spectrum(4), 1, 4, 10.0, 11)
    assert len(rows) == 11 and rows[-1][0] == 10.0
    with pytest.raises(InvalidParameter):
        curve_rows(path_spectrum(4), 1, 4, -1.0, 5)


# -- search ------------------------------------------------------------------


def test_search_finds_state_transfer_on_p2_and_p4():
    for n in (2, 4):
        rep = search_revival(path_spectrum(n), 1, n)
        assert rep.leakage < 1e-2 and rep.cross > 0.9
        assert rep.time <= default_horizon(path_spectrum(n))


@pytest.mark.parametrize("n,a", [(6, 2), (3, 1)])
def test_search_finds_proper_revival(n, a):
    sd = path_spectrum(n)
    rep = search_revival(sd, a, n + 1 - a)
    assert rep.leakage < 1e-2
    assert 0.01 < rep.cross < 0.99
    assert rep.exhibits_proper(1e-2)


def test_search_is_deterministic():
    sd = path_spectrum(6)
    first = json.dumps(search_revival(sd, 2, 5).to_json())
    assert all(json.dumps(search_revival(sd, 2, 5).to_json()) == first for _ in range(2))


def test_search_is_monotone_in_horizon():
    sd = path_spectrum(5)
    h = default_horizon(sd) / 8
    leaks = [search_revival(sd, 1, 5, horizon=h * 2**k).leakage for k in range(4)]
    assert all(later <= earlier + 1e-12 for earlier, later in zip(leaks, leaks[1:]))


def test_search_respects_cross_window():
    sd = path_spectrum(4)
    rep = search_revival(sd, 1, 4, max_cross=0.6)
    assert rep.cross <= 0.6 + 1e-9


# -- phase alignment ---------------------------------------------------------


def _path_phase_setup(n, a, phi, eps):
    cert = certify_path(n, a)
    sd = path_spectrum(n)
    labels = list(cert.support_indices)
    values = [sd.value(r) for r in labels]
    return cert, sd, values, revival_targets(cert.support, labels, phi, eps)


def test_phase_solve_single_eigenvalue():
    target = PhaseTarget((1,), (math.pi,), 1e-9)
    y = phase_solve([2.0], IntMatrix.from_rows([], 1), target)
    assert y == pytest.approx(math.pi / 2)


def test_phase_solve_p4_state_transfer():
    eps = 0.05
    cert, sd, values, target = _path_phase_setup(4, 1, math.pi, eps)
    y = phase_solve(values, cert.basis, target)
    assert y is not None
    assert max_phase_error(np.array(values), np.array(target.angles), y)[0] < eps
    assert revival_report(sd, 1, 4, y).cross > 0.9


def test_phase_solve_p6_proper_revival():
    eps = 0.05
    phi = 2 * math.pi / 3
    cert, sd, values, target = _path_phase_setup(6, 2, phi, eps)
    y = phase_solve(values, cert.basis, target)
    assert y is not None
    rep = revival_report(sd, 2, 5, y)
    assert rep.leakage < 0.05
    assert rep.cross == pytest.approx(math.sin(phi / 2) ** 2, abs=0.05)


def test_phase_solve_rejects_inconsistent_targets():
    eps = 0.05
    cert, _, values, target = _path_phase_setup(6, 1, math.pi, eps)
    with pytest.raises(InfeasibleTarget) as info:
        phase_solve(values, cert.basis, target)
    assert abs(abs(info.value.mismatch) - math.pi) < 1e-9
    assert info.value.relation in {tuple(r) for r in cert.basis}
    with pytest.raises(InfeasibleTarget):
        check_consistency(cert.basis, target)


def test_pgst_targets_place_minus_at_pi():
    cert = certify_path(4, 1)
    labels = list(cert.support_indices)
    t = pgst_targets(cert.support, labels, 0.1)
    for r, z in zip(labels, t.angles):
        assert z == pytest.approx(0.0 if r in cert.support.phi_plus else math.pi)
    with pytest.raises(InvalidParameter):
        revival_targets(certify_path(6, 2).support, [4], math.pi, 0.1)
    with pytest.raises(InvalidParameter):
        PhaseTarget((1,), (0.0,), 0.0)


def test_independent_columns():
    assert independent_columns(hnf([[1, -2, 1]], 3), 3) == [1, 2]
    assert independent_columns(IntMatrix.from_rows([], 2), 2) == [0, 1]


def test_double_star_search_pendant_pair():
    sd = eigendecompose(laplacian(make_double_star(3, 2)))
    rep = search_revival(sd, 1, 2)
    assert rep.leakage < 0.05
