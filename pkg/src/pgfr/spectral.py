"""Spectral decompositions of Laplacians and the walk matrix U(t) = exp(-itL).

Two routes produce a :class:`SpectralDecomposition`: a cyclic Jacobi
eigensolver for any small symmetric matrix, and closed forms for paths and
the two double-star shapes, which also carry exact eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InvalidParameter, NumericFailure
from .exact import (
    CyclotomicElement,
    cubic_reducibility,
    cubic_roots,
    double_star_cubic,
    surd,
)
from .graphs import LaplacianMatrix, double_star_labels, laplacian, make_double_star, make_path

BALANCED = "balanced"
PENDANT_PAIR = "pendant-pair"


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (ascending) with their orthogonal projectors.

    ``labels[k]`` names eigenvalue k for partitions and lattices: the path
    index r for closed-form path spectra, the position k otherwise.
    """

    eigenvalues: np.ndarray
    projectors: np.ndarray
    exact_values: Optional[tuple] = None
    labels: tuple[int, ...] = ()
    laplacian: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        pr = np.asarray(self.projectors, dtype=float)
        if pr.ndim != 3 or pr.shape[0] != ev.shape[0] or pr.shape[1] != pr.shape[2]:
            raise InvalidParameter("projector array must have shape (d+1, n, n)")
        if np.any(np.diff(ev) <= 0):
            raise InvalidParameter("eigenvalues must be strictly increasing")
        ev.setflags(write=False)
        pr.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "projectors", pr)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(ev))))
        if self.exact_values is not None and len(self.exact_values) != len(ev):
            raise InvalidParameter("exact values must align with eigenvalues")

    @property
    def order(self) -> int:
        return self.projectors.shape[1]

    @property
    def d(self) -> int:
        return len(self.eigenvalues) - 1

    def multiplicities(self) -> list[int]:
        return [int(round(np.trace(E))) for E in self.projectors]

    def index_of(self, label: int) -> int:
        return self.labels.index(label)

    def value(self, label: int) -> float:
        return float(self.eigenvalues[self.index_of(label)])

    def exact(self, label: int):
        if self.exact_values is None:
            raise InvalidParameter("this decomposition carries no exact eigenvalues")
        return self.exact_values[self.index_of(label)]

    def reconstruct(self) -> np.ndarray:
        return np.einsum("r,rij->ij", self.eigenvalues, self.projectors)


@dataclass(frozen=True, eq=False)
class WalkSnapshot:
    time: float
    matrix: np.ndarray


def jacobi_eigh(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60):
    """Cyclic Jacobi eigensolver for a dense real symmetric matrix.

    Returns ``(w, V)`` with ascending eigenvalues and orthonormal eigenvector
    columns. Stops once the off-diagonal Frobenius mass drops below
    ``tol * ||A||_F``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if n <= 1 or scale == 0.0:
        return np.diag(a).copy(), v
    history = []
    for sweep in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        history.append(off)
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise NumericFailure(
            f"Jacobi did not converge in {max_sweeps} sweeps; "
            f"off-diagonal mass per sweep: {', '.join(f'{x:.3e}' for x in history[-5:])}"
        )
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _cluster(w: np.ndarray, tol: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, x in enumerate(w):
        if groups and x - w[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def eigendecompose(L, dedup_tol: float = 1e-8, method: str = "jacobi") -> SpectralDecomposition:
    """Numeric spectral decomposition of a symmetric matrix.

    Sorted eigenvalues whose consecutive gap is at most ``dedup_tol`` share one
    projector. ``method="numpy"`` swaps in LAPACK's ``eigh``.
    """
    if dedup_tol <= 0:
        raise InvalidParameter("dedup_tol must be positive")
    mat = L.to_numpy() if isinstance(L, LaplacianMatrix) else np.asarray(L, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InvalidParameter("matrix must be square")
    if not np.allclose(mat, mat.T, rtol=0, atol=1e-12):
        raise InvalidParameter("matrix is not symmetric")
    if method == "jacobi":
        w, v = jacobi_eigh(mat)
    elif method == "numpy":
        w, v = np.linalg.eigh(mat)
    else:
        raise InvalidParameter(f"unknown method {method!r}")
    groups = _cluster(w, dedup_tol)
    values = np.array([w[g].mean() for g in groups])
    projs = np.array([v[:, g] @ v[:, g].T for g in groups])
    return SpectralDecomposition(values, projs, laplacian=mat)


def _projector(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=float)
    return np.outer(vec, vec) / vec.dot(vec)


def path_spectrum(n: int) -> SpectralDecomposition:
    """Closed-form spectrum of P_n; labels are the path indices r, values exact cyclotomic."""
    if n < 1:
        raise InvalidParameter(f"path needs n >= 1, got {n}")
    j = np.arange(1, n + 1)
    entries = [(0.0, 0, np.ones(n), Fraction(0))]
    for r in range(1, n):
        mu = 2.0 + 2.0 * math.cos(r * math.pi / n)
        phi = (-1.0) ** j * np.sin((2 * j - 1) * r * math.pi / (2 * n)) * math.cos(r * math.pi / (2 * n))
        entries.append((mu, r, phi, CyclotomicElement.path_eigenvalue(n, r)))
    # mu_r decreases in r, so ascending order is 0, mu_{n-1}, ..., mu_1.
    entries.sort(key=lambda e: e[0])
    return SpectralDecomposition(
        np.array([e[0] for e in entries]),
        np.array([_projector(e[2]) for e in entries]),
        exact_values=tuple(e[3] for e in entries),
        labels=tuple(e[1] for e in entries),
        laplacian=laplacian(make_path(n)).to_numpy(),
    )


def _balanced_spectrum(m: int) -> SpectralDecomposition:
    lab = double_star_labels(m, m)
    size = 2 * m + 2
    p2, p1 = np.array(lab["second_pendants"]) - 1, np.array(lab["first_pendants"]) - 1
    c2, c1 = lab["second_center"] - 1, lab["first_center"] - 1
    disc = m * m + 6 * m + 1
    entries = [(Fraction(0), _projector(np.ones(size)))]
    sym = np.zeros(size)
    sym[p2] = sym[p1] = 1.0
    sym[c2] = sym[c1] = -m
    entries.append((Fraction(m + 1), _projector(sym)))
    for sign in (1, -1):
        val = surd(Fraction(m + 3, 2), Fraction(sign, 2), disc)
        mu = float(val)
        anti = np.zeros(size)
        anti[p2], anti[p1] = 1.0, -1.0
        anti[c2], anti[c1] = 1.0 - mu, mu - 1.0
        entries.append((val, _projector(anti)))
    if m > 1:
        e1 = np.zeros((size, size))
        for grp in (p2, p1):
            e1[np.ix_(grp, grp)] = np.eye(m) - 1.0 / m
        entries.append((Fraction(1), e1))
    entries.sort(key=lambda e: float(e[0]))
    return SpectralDecomposition(
        np.array([float(e[0]) for e in entries]),
        np.array([e[1] for e in entries]),
        exact_values=tuple(e[0] for e in entries),
        laplacian=laplacian(make_double_star(m, m)).to_numpy(),
    )


def _pendant_pair_spectrum(m: int) -> SpectralDecomposition:
    lab = double_star_labels(m, 2)
    size = m + 4
    pair = np.array(lab["second_pendants"]) - 1
    far = np.array(lab["first_pendants"]) - 1
    c3, c4 = lab["second_center"] - 1, lab["first_center"] - 1
    split = cubic_reducibility(m)
    if split == "irreducible":
        roots = cubic_roots(double_star_cubic(m))
    else:
        root, quad = split
        # quad = x^2 + b x + c  ->  (-b +- sqrt(b^2 - 4c)) / 2
        c, b, _ = quad.coeffs
        roots = [Fraction(root)] + [surd(Fraction(-b, 2), Fraction(s, 2), b * b - 4 * c) for s in (1, -1)]
    entries = [(Fraction(0), _projector(np.ones(size)))]
    for theta in roots:
        x = float(theta)
        vec = np.zeros(size)
        vec[pair] = 1.0
        vec[c3] = 1.0 - x
        vec[c4] = x * x - 4.0 * x + 1.0
        vec[far] = (x * x - 4.0 * x + 1.0) / (1.0 - x)
        entries.append((theta, _projector(vec)))
    e1 = np.zeros((size, size))
    e1[np.ix_(pair, pair)] = np.eye(2) - 0.5
    e1[np.ix_(far, far)] = np.eye(m) - 1.0 / m
    entries.append((Fraction(1), e1))
    entries.sort(key=lambda e: float(e[0]))
    return SpectralDecomposition(
        np.array([float(e[0]) for e in entries]),
        np.array([e[1] for e in entries]),
        exact_values=tuple(e[0] for e in entries),
        laplacian=laplacian(make_double_star(m, 2)).to_numpy(),
    )


def double_star_spectrum(m: int, shape: str) -> SpectralDecomposition:
    """Closed-form spectrum of S(m, m) (``"balanced"``) or S(m, 2) (``"pendant-pair"``)."""
    if m < 1:
        raise InvalidParameter(f"m must be positive, got {m}")
    if shape == BALANCED:
        return _balanced_spectrum(m)
    if shape == PENDANT_PAIR:
        return _pendant_pair_spectrum(m)
    raise InvalidParameter(f"unknown double-star shape {shape!r}")


def transition_matrix(sd: SpectralDecomposition, t: float) -> WalkSnapshot:
    phases = np.exp(-1j * t * sd.eigenvalues)
    return WalkSnapshot(float(t), np.einsum("r,rij->ij", phases, sd.projectors))


def pair_blocks(sd: SpectralDecomposition, a: int, b: int) -> np.ndarray:
    """Projector entries restricted to {a, b} (1-based): shape (d+1, 2, 2)."""
    idx = [a - 1, b - 1]
    return sd.projectors[:, idx][:, :, idx]


def spectral_residuals(sd: SpectralDecomposition, L: Optional[np.ndarray] = None) -> dict:
    """Max-norm residuals of the projector algebra; used by tests and the acceptance run."""
    E = sd.projectors
    n = sd.order
    L = sd.laplacian if L is None else np.asarray(L, dtype=float)
    idem = max(np.abs(P @ P - P).max() for P in E)
    ortho = 0.0
    for r in range(len(E)):
        for s in range(r + 1, len(E)):
            ortho = max(ortho, np.abs(E[r] @ E[s]).max())
    complete = np.abs(E.sum(axis=0) - np.eye(n)).max()
    out = {"idempotence": float(idem), "orthogonality": float(ortho), "completeness": float(complete)}
    if L is not None:
        out["reconstruction"] = float(np.abs(sd.reconstruct() - L).max())
    return out
