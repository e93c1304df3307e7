"""Revival metrics of U(t) = exp(-itL) at a vertex pair, grid search for
near-block-diagonal times, and phase alignment by simultaneous approximation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InfeasibleTarget, InvalidParameter
from .exact import IntMatrix
from .spectral import SpectralDecomposition, pair_blocks, transition_matrix
from .support import SupportPartition

TWO_PI = 2.0 * math.pi
GRID_INTERVALS = 20000
HORIZON_PERIODS = 200
PROPER_DELTA = 0.01
# |leakage| below this is rounding noise of 1 - |U_aa|^2 - |U_ba|^2 and reads as 0.
NOISE_FLOOR = 64 * np.finfo(float).eps


def _leakage(at_a, cross):
    leak = 1.0 - at_a - cross
    return np.where(np.abs(leak) < NOISE_FLOOR, 0.0, leak)


@dataclass(frozen=True, eq=False)
class RevivalReport:
    time: float
    at_a: float
    cross: float
    leakage: float
    block: np.ndarray  # 2x2 restriction of U(t) to {a, b}

    def to_json(self) -> dict:
        return {"t": self.time, "at_a": self.at_a, "cross": self.cross, "leakage": self.leakage}

    def exhibits_proper(self, eps: float, delta: float = PROPER_DELTA) -> bool:
        """Heuristic only: leakage below eps with cross strictly inside (delta, 1 - delta)."""
        return self.leakage < eps and delta < self.cross < 1.0 - delta


@dataclass(frozen=True)
class PhaseTarget:
    """Target angle zeta_r in [0, 2pi) for each eigenvalue label, with tolerance eps."""

    labels: tuple[int, ...]
    angles: tuple[float, ...]
    eps: float

    def __post_init__(self):
        if len(self.labels) != len(self.angles):
            raise InvalidParameter("labels and angles differ in length")
        if self.eps <= 0:
            raise InvalidParameter("phase tolerance must be positive")
        object.__setattr__(self, "angles", tuple(float(z) % TWO_PI for z in self.angles))


def _check_pair(sd: SpectralDecomposition, a: int, b: int):
    if a == b:
        raise InvalidParameter("revival metrics need two distinct vertices")
    if not (1 <= a <= sd.order and 1 <= b <= sd.order):
        raise InvalidParameter(f"vertices must lie in 1..{sd.order}")


def revival_report(sd: SpectralDecomposition, a: int, b: int, t: float) -> RevivalReport:
    """Metrics read off the full transition matrix U(t)."""
    _check_pair(sd, a, b)
    U = transition_matrix(sd, t).matrix
    idx = [a - 1, b - 1]
    at_a = float(abs(U[a - 1, a - 1]) ** 2)
    cross = float(abs(U[b - 1, a - 1]) ** 2)
    return RevivalReport(float(t), at_a, cross, float(_leakage(at_a, cross)), U[np.ix_(idx, idx)].copy())


def pair_metrics(sd: SpectralDecomposition, a: int, b: int, times) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(at_a, cross, leakage) at many times, using only the pair entries of each E_r."""
    _check_pair(sd, a, b)
    blocks = pair_blocks(sd, a, b)
    t = np.atleast_1d(np.asarray(times, dtype=float))
    phases = np.exp(-1j * np.outer(t, sd.eigenvalues))
    uaa = phases @ blocks[:, 0, 0]
    uba = phases @ blocks[:, 1, 0]
    at_a = np.abs(uaa) ** 2
    cross = np.abs(uba) ** 2
    return at_a, cross, _leakage(at_a, cross)


def default_horizon(sd: SpectralDecomposition) -> float:
    gaps = np.diff(sd.eigenvalues)
    if gaps.size == 0:
        return TWO_PI
    return HORIZON_PERIODS * TWO_PI / float(gaps.min())


LEAK_QUANTUM = 1e-12


def _objective(sd, a, b, times, min_cross, max_cross):
    """Leakage clipped at 0 and quantized to LEAK_QUANTUM (inf outside the cross window), and cross."""
    _, cross, leak = pair_metrics(sd, a, b, times)
    ok = (cross >= min_cross) & (cross <= max_cross)
    q = np.round(np.maximum(leak, 0.0) / LEAK_QUANTUM)
    return np.where(ok, q, np.inf), cross


def _best(q, cross, times):
    """Index of the lowest quantized leakage, then highest cross, then earliest time."""
    return int(np.lexsort((times, -cross, q))[0])


def search_revival(
    sd: SpectralDecomposition,
    a: int,
    b: int,
    eps: float = 1e-2,
    horizon: Optional[float] = None,
    refine_steps: int = 60,
    min_cross: float = PROPER_DELTA,
    max_cross: float = 1.0,
    step: Optional[float] = None,
) -> RevivalReport:
    """Lowest-leakage time on [0, horizon] with cross in [min_cross, max_cross].

    The grid step defaults to default_horizon / 20000 independently of the
    horizon actually searched, so grids for growing horizons nest and the
    minimum found never increases. Every interior grid local minimum is refined
    by ternary search. Leakage is compared after quantizing to 1e-12, so exact
    ties (P_2 never leaks) go to the larger cross and then the earlier time.
    ``eps`` only matters through ``RevivalReport.exhibits_proper``.
    """
    _check_pair(sd, a, b)
    if eps <= 0:
        raise InvalidParameter("eps must be positive")
    horizon = default_horizon(sd) if horizon is None else float(horizon)
    if horizon < 0:
        raise InvalidParameter("horizon must be nonnegative")
    step = default_horizon(sd) / GRID_INTERVALS if step is None else float(step)
    count = int(math.floor(horizon / step + 1e-9)) + 1
    times = np.arange(count) * step
    q, cross = _objective(sd, a, b, times, min_cross, max_cross)
    cand_t, cand_q, cand_c = [times], [q], [cross]

    if count >= 3 and refine_steps > 0:
        _, _, leak = pair_metrics(sd, a, b, times)
        ok = np.isfinite(q)
        mid = leak[1:-1]
        interior = np.nonzero(ok[1:-1] & (mid <= leak[:-2]) & (mid <= leak[2:]))[0] + 1
        if interior.size:
            lo = times[interior] - step
            hi = times[interior] + step
            for _ in range(refine_steps):
                m1 = lo + (hi - lo) / 3
                m2 = hi - (hi - lo) / 3
                f1 = pair_metrics(sd, a, b, m1)[2]
                f2 = pair_metrics(sd, a, b, m2)[2]
                left = f1 <= f2
                hi = np.where(left, m2, hi)
                lo = np.where(left, lo, m1)
            t_ref = (lo + hi) / 2
            rq, rc = _objective(sd, a, b, t_ref, min_cross, max_cross)
            cand_t.append(t_ref)
            cand_q.append(rq)
            cand_c.append(rc)

    all_t, all_q, all_c = (np.concatenate(x) for x in (cand_t, cand_q, cand_c))
    if np.isfinite(all_q).any():
        best_t = float(all_t[_best(all_q, all_c, all_t)])
    else:
        # No time satisfies the cross window: fall back to the plain minimum.
        _, _, leak = pair_metrics(sd, a, b, times)
        best_t = float(times[int(np.argmin(leak))])
    return revival_report(sd, a, b, best_t)


def curve_rows(sd: SpectralDecomposition, a: int, b: int, t_max: float, points: int) -> list[tuple[float, float, float, float]]:
    """Rows (t, at_a, cross, leakage) on an even grid of ``points`` samples over [0, t_max]."""
    if t_max < 0 or points < 1:
        raise InvalidParameter("need t_max >= 0 and at least one point")
    times = np.array([0.0]) if t_max == 0 else np.linspace(0.0, t_max, points)
    at_a, cross, leak = pair_metrics(sd, a, b, times)
    return [(float(t), float(x), float(y), float(z)) for t, x, y, z in zip(times, at_a, cross, leak)]


# -- phase alignment ---------------------------------------------------------


def _wrap(x):
    """Map angles to (-pi, pi]."""
    return -(np.mod(-np.asarray(x) + math.pi, TWO_PI) - math.pi)


def revival_targets(sp: SupportPartition, labels: Sequence[int], phi: float, eps: float) -> PhaseTarget:
    """Targets for U restricted to {a, b} to be cos-sin block with relative phase phi.

    Phi^+ eigenvalues go to phase 0 (fixing the global phase through mu_0 = 0)
    and Phi^- eigenvalues to -phi; phi = pi gives state transfer.
    """
    sign = sp.sign_of
    angles = []
    for r in labels:
        if sign[r] == 0:
            raise InvalidParameter(f"label {r} lies in Phi^0 and carries no target")
        angles.append(0.0 if sign[r] == 1 else (-phi) % TWO_PI)
    return PhaseTarget(tuple(labels), tuple(angles), eps)


def pgst_targets(sp: SupportPartition, labels: Sequence[int], eps: float) -> PhaseTarget:
    return revival_targets(sp, labels, math.pi, eps)


def check_consistency(basis: IntMatrix, target: PhaseTarget) -> None:
    """Kronecker's necessary condition on every lattice row; raises InfeasibleTarget."""
    z = np.array(target.angles)
    for row in basis:
        l = np.array(row, dtype=float)
        mismatch = float(_wrap(l @ z))
        if abs(mismatch) > target.eps * float(np.abs(l).sum()):
            raise InfeasibleTarget(
                f"targets violate relation {list(row)}: mismatch {mismatch:.6g} rad",
                relation=tuple(row),
                mismatch=mismatch,
            )


def independent_columns(basis: IntMatrix, width: int) -> list[int]:
    """Columns without an HNF pivot: their eigenvalues are linearly independent over Q."""
    pivots = {next(j for j, x in enumerate(row) if x) for row in basis}
    return [j for j in range(width) if j not in pivots]


def max_phase_error(values: np.ndarray, angles: np.ndarray, y) -> np.ndarray:
    y = np.atleast_1d(np.asarray(y, dtype=float))
    return np.abs(_wrap(np.outer(y, values) - angles)).max(axis=1)


def _convergent_denominators(x: float, count: int) -> list[int]:
    frac = Fraction(x).limit_denominator(10**12)
    dens, h0, h1 = [], 0, 1
    for _ in range(count):
        a = frac.numerator // frac.denominator
        h0, h1 = h1, a * h1 + h0
        dens.append(h1)
        frac -= a
        if frac == 0:
            break
        frac = 1 / frac
    return dens


def _golden(f, lo, hi, iters=80):
    g = (math.sqrt(5) - 1) / 2
    c, d = hi - g * (hi - lo), lo + g * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = f(d)
    return (lo + hi) / 2


def phase_solve(
    eigenvalues: Sequence[float],
    basis: IntMatrix,
    target: PhaseTarget,
    budget: int = 2_000_000,
) -> Optional[float]:
    """A time y >= 0 with |mu_r y - zeta_r| < eps (mod 2pi) for every r, or None.

    ``eigenvalues`` align with ``target.labels`` and with the columns of the
    exact relation lattice ``basis``. Candidates come from the independent
    eigenvalues: first y = (zeta + 2pi k)/mu for the smallest independent mu,
    started from continued-fraction convergents of the frequency ratios, then a
    chunked k-scan; each near-miss is polished by golden-section search on the
    maximal phase error. The answer is re-verified before it is returned.
    """
    mu = np.asarray(eigenvalues, dtype=float)
    z = np.asarray(target.angles, dtype=float)
    if mu.shape != z.shape:
        raise InvalidParameter("eigenvalues and targets differ in length")
    if mu.size == 0:
        return 0.0
    if np.any(mu <= 0):
        raise InvalidParameter("phase targets are defined for positive eigenvalues only")
    check_consistency(basis, target)
    eps = target.eps

    def err(y):
        return max_phase_error(mu, z, y)

    def accept(y):
        return y is not None and y >= 0 and float(err(y)[0]) < eps

    indep = independent_columns(basis, mu.size) or [int(np.argmin(mu))]
    alpha = min(indep, key=lambda j: mu[j])
    base = mu[alpha]
    others = [j for j in indep if j != alpha]

    # Convergent denominators of mu_j / mu_alpha hint at k where phases nearly repeat.
    seeds = {0}
    for j in others:
        for q in _convergent_denominators(mu[j] / base, 12):
            seeds.update({q, 2 * q})
    ks = np.array(sorted(k for k in seeds if k <= budget), dtype=float)
    found = _scan(ks, z[alpha], base, err, eps)
    if found is not None and accept(found):
        return found

    chunk = 200_000
    start = 0
    spacing = TWO_PI / base
    while start < budget:
        ks = np.arange(start, min(start + chunk, budget), dtype=float)
        ys = (z[alpha] + TWO_PI * ks) / base
        e = err(ys)
        hit = np.nonzero(e < eps)[0]
        if hit.size:
            return float(ys[hit[0]])
        near = np.argsort(e)[:8]
        for i in sorted(near):
            if e[i] < 4 * eps:
                y = _golden(lambda s: float(err(s)[0]), ys[i] - spacing / 4, ys[i] + spacing / 4)
                if accept(y):
                    return float(y)
        start += chunk

    # Coarse grid fallback over the scanned range.
    hi = budget * spacing
    step = eps / float(mu.max())
    n_pts = int(min(hi / step, 5_000_000))
    for ys in np.array_split(np.linspace(0.0, hi, max(n_pts, 2)), max(1, n_pts // 200_000)):
        e = err(ys)
        hit = np.nonzero(e < eps)[0]
        if hit.size:
            return float(ys[hit[0]])
    return None


def _scan(ks, zeta, base, err, eps):
    if ks.size == 0:
        return None
    ys = (zeta + TWO_PI * ks) / base
    e = err(ys)
    hit = np.nonzero(e < eps)[0]
    return float(ys[hit[0]]) if hit.size else None
