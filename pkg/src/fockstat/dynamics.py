"""Explicit unitary-group action on excitation sectors.

Fermionic sectors act through matrix minors (antisymmetric powers), bosonic
sectors through permanents (symmetric powers), and order-one generalized
statistics through conjugation by the hidden-label bijection: the ordinary
representation acts on particle content while auxiliary labels ride along
untouched.  Total excitation is conserved, so everything is block
per-sector; no global Fock matrix is ever materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Sequence

import numpy as np

from .classify import StatisticsSpec
from .errors import ResourceGuardError
from .fock import (
    LabeledState,
    enumerate_basis,
    excitation_number,
    excitation_of,
    from_labeled,
    sector_states,
    to_labeled,
)

__all__ = [
    "SectorRep",
    "AmplitudeVector",
    "beamsplitter",
    "haar_unitary",
    "check_unitary",
    "permanent",
    "fermionic_rep",
    "bosonic_rep",
    "sector_rep",
    "evolve",
    "detection_probabilities",
    "character_trace",
]

UNITARITY_TOL = 1e-12
PERMANENT_GUARD = 8
NORMALIZATION_TOL = 1e-10


def beamsplitter() -> np.ndarray:
    """Balanced two-mode beam splitter."""
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def haar_unitary(d: int, seed: int) -> np.ndarray:
    """Seed-deterministic Haar-distributed unitary (QR with phase fix)."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def check_unitary(g: np.ndarray, tol: float = UNITARITY_TOL) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError(f"mode transformation must be square, got {g.shape}")
    dev = np.max(np.abs(g.conj().T @ g - np.eye(g.shape[0])))
    if dev > tol:
        raise ValueError(f"matrix is not unitary (deviation {dev:.3e} > {tol:.0e})")
    return g


def permanent(a: np.ndarray) -> complex:
    """Permanent by Ryser inclusion-exclusion, O(2^n * n)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if (mask >> j) & 1]
        rowsums = a[:, cols].sum(axis=1)
        total += (-1) ** len(cols) * np.prod(rowsums)
    return complex((-1) ** n * total)


@dataclass(frozen=True)
class SectorRep:
    """Matrix of one excitation sector together with its basis ordering."""

    basis: tuple
    matrix: np.ndarray


def fermionic_rep(g: np.ndarray, N: int) -> SectorRep:
    """Antisymmetric sector: basis indexed by N-subsets of modes,
    entries are determinants of the corresponding submatrices."""
    g = check_unitary(g)
    d = g.shape[0]
    if not 0 <= N <= d:
        raise ValueError(f"fermionic sector needs 0 <= N <= d, got N={N}")
    subsets = list(combinations(range(d), N))
    m = np.empty((len(subsets), len(subsets)), dtype=complex)
    for col, s_in in enumerate(subsets):
        for row, s_out in enumerate(subsets):
            m[row, col] = np.linalg.det(g[np.ix_(s_out, s_in)])
    return SectorRep(basis=tuple(subsets), matrix=m)


def _weak_compositions(total: int, d: int) -> list[tuple[int, ...]]:
    """Occupation vectors summing to ``total`` in colexicographic order."""
    if d == 1:
        return [(total,)]
    out = []
    for rest in range(total + 1):
        for tail in _weak_compositions(rest, d - 1):
            out.append((total - rest,) + tail)
    out.sort(key=lambda s: tuple(reversed(s)))
    return out


def bosonic_rep(g: np.ndarray, N: int, *, guard: int = PERMANENT_GUARD) -> SectorRep:
    """Symmetric sector: basis indexed by occupation vectors of weight N,
    entries per(g[m|n]) / sqrt(prod m_i! prod n_j!) with rows and columns
    repeated per occupation."""
    g = check_unitary(g)
    if N < 0:
        raise ValueError("sector index must be >= 0")
    if N > guard:
        raise ResourceGuardError(
            f"permanent guard exceeded: N={N} > {guard} (override via guard=)"
        )
    d = g.shape[0]
    basis = _weak_compositions(N, d)
    factorials = [float(math.prod(math.factorial(k) for k in occ)) for occ in basis]
    reps = [
        [i for i, k in enumerate(occ) for _ in range(k)] for occ in basis
    ]
    m = np.empty((len(basis), len(basis)), dtype=complex)
    for col in range(len(basis)):
        for row in range(len(basis)):
            sub = g[np.ix_(reps[row], reps[col])]
            m[row, col] = permanent(sub) / np.sqrt(factorials[row] * factorials[col])
    return SectorRep(basis=tuple(basis), matrix=m)


def _flat_aux(spec: StatisticsSpec, state: Sequence[int]) -> tuple[int, ...]:
    lab = to_labeled(spec, state)
    if spec.is_fermionic_like:
        return tuple(lab.aux)
    return tuple(chain.from_iterable(lab.aux))


def sector_rep(spec: StatisticsSpec, g: np.ndarray, N: int) -> SectorRep:
    """Excitation-N sector of an order-one statistics with unique vacuum.

    The ordinary sector representation is conjugated through the label
    bijection; auxiliary labels are acted on by the identity, so the matrix
    is the ordinary one distributed over equal-label blocks.
    """
    g = check_unitary(g)
    d = g.shape[0]
    basis = tuple(sector_states(spec, d, N))  # raises for unsupported specs
    if spec.is_fermionic_like:
        ordinary = fermionic_rep(g, N)
        key = lambda state: tuple(
            i for i, k in enumerate(to_labeled(spec, state).ordinary) if k
        )
    else:
        ordinary = bosonic_rep(g, N)
        key = lambda state: to_labeled(spec, state).ordinary
    index = {b: i for i, b in enumerate(ordinary.basis)}
    ords = [index[key(s)] for s in basis]
    auxs = [_flat_aux(spec, s) for s in basis]
    m = np.zeros((len(basis), len(basis)), dtype=complex)
    for col in range(len(basis)):
        for row in range(len(basis)):
            if auxs[row] == auxs[col]:
                m[row, col] = ordinary.matrix[ords[row], ords[col]]
    return SectorRep(basis=basis, matrix=m)


@dataclass(frozen=True)
class AmplitudeVector:
    """Complex amplitudes over one excitation sector of the occupation basis."""

    spec: StatisticsSpec
    basis: tuple[tuple[int, ...], ...]
    amplitudes: np.ndarray

    def __init__(self, spec, basis, amplitudes):
        basis = tuple(tuple(b) for b in basis)
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if not basis:
            raise ValueError("empty basis")
        if len(set(basis)) != len(basis):
            raise ValueError("duplicate basis states")
        if amplitudes.shape != (len(basis),):
            raise ValueError("one amplitude per basis state required")
        sectors = {excitation_number(spec, b) for b in basis}
        if len(sectors) != 1:
            raise ValueError(
                f"basis must live in a single excitation sector, got {sectors}"
            )
        norm = float(np.sum(np.abs(amplitudes) ** 2))
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"state not normalized: sum |a|^2 = {norm!r}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def sector(self) -> int:
        return excitation_number(self.spec, self.basis[0])

    @classmethod
    def basis_state(
        cls,
        spec: StatisticsSpec,
        ordinary: Sequence[int],
        aux: Sequence | None = None,
    ) -> "AmplitudeVector":
        """Single occupation state from ordinary occupations plus auxiliary
        labels (defaulting to all-zero labels)."""
        ordinary = tuple(int(k) for k in ordinary)
        if aux is None:
            if spec.is_fermionic_like:
                aux = tuple(0 for k in ordinary if k > 0)
            else:
                aux = tuple((0,) * k for k in ordinary if k > 0)
        state = from_labeled(spec, LabeledState(ordinary, tuple(aux)))
        return cls(spec, (state,), np.array([1.0 + 0.0j]))


def evolve(g: np.ndarray, vec: AmplitudeVector) -> AmplitudeVector:
    """Apply the mode transformation to a one-sector state."""
    rep = sector_rep(vec.spec, g, vec.sector)
    index = {b: i for i, b in enumerate(rep.basis)}
    full = np.zeros(len(rep.basis), dtype=complex)
    for b, a in zip(vec.basis, vec.amplitudes):
        full[index[b]] = a
    return AmplitudeVector(vec.spec, rep.basis, rep.matrix @ full)


def detection_probabilities(vec: AmplitudeVector) -> dict[tuple[int, ...], float]:
    """Detector statistics: particle numbers per mode, auxiliary labels
    marginalized.  Sums to 1 for any normalized input."""
    probs: dict[tuple[int, ...], float] = {}
    for state, amp in zip(vec.basis, vec.amplitudes):
        p = float(abs(amp) ** 2)
        if p == 0.0:
            continue
        ordinary = to_labeled(vec.spec, state).ordinary
        probs[ordinary] = probs.get(ordinary, 0.0) + p
    return probs


def character_trace(
    spec: StatisticsSpec,
    phases: Sequence[float],
    excitation_cutoff: int | None = None,
) -> complex:
    """Trace of the diagonal-phase action: sum over basis states of
    exp(i * sum_k theta_k f_{n_k}).

    Bosonic-like labels are restricted to total excitation <= cutoff;
    fermionic-like traces run over the whole (finite) basis.
    """
    d = len(phases)
    basis = enumerate_basis(
        spec, d, excitation_cutoff=None if spec.is_fermionic_like else excitation_cutoff
    )
    total = 0.0 + 0.0j
    for state in basis:
        phase = sum(theta * excitation_of(spec, n) for theta, n in zip(phases, state))
        total += np.exp(1j * phase)
    return complex(total)
