"""Pure states, density matrices, weighted ensembles, and overlap synthesis.

All wrapper types validate on construction and hold read-only arrays, so a
value that exists is a value that satisfies its invariants.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvariantViolationError,
    NotPsdError,
)

#: Norm tolerance for state vectors.
TOL_NORM = 1e-10
#: Trace / Hermiticity / positivity tolerance for density matrices.
TOL_DENSITY = 1e-9
#: Tolerance on the sum of ensemble priors.
TOL_PRIORS = 1e-12


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Ket:
    """Unit vector in C^dim."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = linalg.as_cvector(self.amplitudes)
        if a.shape[0] < 1:
            raise DimensionMismatchError("empty state vector")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > TOL_NORM:
            raise InvariantViolationError(f"ket norm {norm!r} differs from 1")
        object.__setattr__(self, "amplitudes", _freeze(a))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> np.ndarray:
        """Outer product |k><k| as a bare matrix."""
        return np.outer(self.amplitudes, np.conj(self.amplitudes))


def basis_ket(dim: int, index: int) -> Ket:
    """Canonical basis vector |index> in C^dim."""
    if not 0 <= index < dim:
        raise IndexOutOfRangeError(f"basis index {index} not in [0, {dim})")
    a = np.zeros(dim, dtype=np.complex128)
    a[index] = 1.0
    return Ket(a)


def inner(a: Ket, b: Ket) -> complex:
    """Inner product <a|b>, antilinear in the first argument."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"<a|b> with dims {a.dim} and {b.dim}")
    return complex(np.conj(a.amplitudes) @ b.amplitudes)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian PSD matrix with unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_cmatrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"density matrix must be square, got {m.shape}")
        w, _ = linalg.hermitian_eig(m)  # raises NotHermitianError beyond TOL_HERM
        if w.min() < -TOL_DENSITY:
            raise NotPsdError(f"density matrix eigenvalue {w.min():.3e}")
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TOL_DENSITY:
            raise InvariantViolationError(f"density matrix trace {tr!r} differs from 1")
        object.__setattr__(self, "matrix", _freeze(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def pure(cls, ket: Ket) -> "DensityMatrix":
        return cls(ket.density())


@dataclass(frozen=True, eq=False)
class Ensemble:
    """States with prior probabilities, all on one space."""

    states: tuple[Ket, ...]
    priors: np.ndarray

    def __post_init__(self):
        states = tuple(self.states)
        if not states:
            raise DimensionMismatchError("ensemble needs at least one state")
        dim = states[0].dim
        if any(s.dim != dim for s in states):
            raise DimensionMismatchError("ensemble states live on different spaces")
        p = np.array(self.priors, dtype=float).reshape(-1)
        if p.shape[0] != len(states):
            raise DimensionMismatchError(
                f"{len(states)} states but {p.shape[0]} priors"
            )
        if p.min() < 0.0:
            raise InvariantViolationError(f"negative prior {p.min()!r}")
        if abs(p.sum() - 1.0) > TOL_PRIORS:
            raise InvariantViolationError(f"priors sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", _freeze(p))

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True, eq=False)
class GramSpec:
    """Pairwise overlaps plus priors; the abstract datum of an ensemble.

    ``overlaps[i, j]`` is the required ``<u_i|u_j>``; the matrix must be
    Hermitian with unit diagonal.  Realizability (positive semidefiniteness)
    is checked when states are synthesized, not here.
    """

    overlaps: np.ndarray
    priors: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        g = linalg.as_cmatrix(self.overlaps)
        n = g.shape[0]
        if g.shape[1] != n:
            raise DimensionMismatchError(f"overlap matrix must be square, got {g.shape}")
        if linalg.frobenius(g - linalg.dag(g)) > linalg.TOL_HERM:
            raise InvariantViolationError("overlap matrix is not Hermitian")
        if np.abs(np.diag(g) - 1.0).max() > TOL_DENSITY:
            raise InvariantViolationError("overlap matrix diagonal must be 1")
        priors = self.priors
        if priors is None:
            priors = np.full(n, 1.0 / n)
        p = np.array(priors, dtype=float).reshape(-1)
        if p.shape[0] != n:
            raise DimensionMismatchError(f"{n} states but {p.shape[0]} priors")
        if p.min() < 0.0 or abs(p.sum() - 1.0) > TOL_PRIORS:
            raise InvariantViolationError("priors must be non-negative and sum to 1")
        object.__setattr__(self, "overlaps", _freeze(g))
        object.__setattr__(self, "priors", _freeze(p))

    @property
    def n_states(self) -> int:
        return self.overlaps.shape[0]


def states_from_gram(spec: GramSpec) -> Ensemble:
    """Synthesize kets in C^n realizing the requested overlaps.

    Uses the triangular PSD factor of the overlap matrix; the i-th ket is
    the conjugated i-th row, which fixes the phase convention (real
    non-negative diagonal pivots).  Raises :class:`NotPsdError` when the
    overlaps are not realizable.
    """
    ell = linalg.psd_cholesky(spec.overlaps)
    kets = tuple(Ket(np.conj(ell[i, :])) for i in range(spec.n_states))
    return Ensemble(kets, spec.priors)


def ensemble_density(ensemble: Ensemble) -> DensityMatrix:
    """Average state ``sum_i p_i |u_i><u_i|``."""
    rho = np.zeros((ensemble.dim, ensemble.dim), dtype=np.complex128)
    for p, s in zip(ensemble.priors, ensemble.states):
        rho += p * s.density()
    return DensityMatrix(rho)


def extend_with_ancilla(ket: Ket, ancilla_dim: int, ancilla_index: int = 0) -> Ket:
    """Tensor a ket with an ancilla basis state, system index major.

    The joint index is ``i_system * ancilla_dim + i_ancilla``.
    """
    if ancilla_dim < 1:
        raise DimensionMismatchError(f"ancilla dimension {ancilla_dim} < 1")
    if not 0 <= ancilla_index < ancilla_dim:
        raise IndexOutOfRangeError(
            f"ancilla index {ancilla_index} not in [0, {ancilla_dim})"
        )
    anc = np.zeros(ancilla_dim, dtype=np.complex128)
    anc[ancilla_index] = 1.0
    return Ket(np.kron(ket.amplitudes, anc))
