"""Discrimination schemes: explicit ancilla couplings plus labeled POVMs.

A scheme bundles an ensemble of system states, an ancilla dimension, a
joint unitary that couples system and ancilla, a labeled POVM on the
joint space, and the closed-form success probability.  Construction
verifies the closed form against the measurement pipeline, so a scheme
that exists is a scheme whose formula is numerically honest.

Builders
--------
``build_rra``                 two states, qubit ancilla, unambiguous
``build_mixed_special``       three states (two mutually orthogonal, both
                              overlapping a third), qubit ancilla; two
                              outcomes unambiguous, one ambiguous, one
                              inconclusive-but-informative
``build_mixed_general``       same geometry with the first pair's overlap
                              freed to a second parameter
``build_unambiguous_special`` fully unambiguous family over the same
                              states, parameterized by failure amplitudes
``build_zero_aux``            ancilla-free projective variant available
                              when the overlaps satisfy a cyclic
                              consistency condition
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import linalg, measurement
from .errors import (
    AmplitudeOutOfRangeError,
    DimensionMismatchError,
    GammaOutOfRangeError,
    GramNotPsdError,
    HypothesisViolatedError,
    InfeasibleAmplitudesError,
    InvalidGammaError,
    InvariantViolationError,
    OverlapConstraintViolatedError,
    ParamOutOfRangeError,
    ZeroProbabilityOutcomeError,
)
from .measurement import OutcomeLabel, Povm
from .states import Ensemble, GramSpec, Ket, states_from_gram

#: Unitarity tolerance for scheme couplings.
TOL_UNITARY = 1e-10
#: Allowed gap between the closed-form and pipeline success probabilities.
TOL_PIPELINE = 1e-9
#: Slack for closed-interval parameter boundaries.
TOL_BOUNDARY = 1e-12

_HALF_SQRT2 = np.sqrt(0.5)


@dataclass(frozen=True)
class RraParams:
    kind = "rra"
    c_plus: complex
    c_minus: complex


@dataclass(frozen=True)
class MixedSpecialParams:
    kind = "mixed-special"
    gamma: float


@dataclass(frozen=True)
class MixedGeneralParams:
    kind = "mixed-general"
    gamma: float
    alpha: float


@dataclass(frozen=True)
class UnambiguousSpecialParams:
    kind = "unambiguous-special"
    gamma: float
    x0: float
    x1: float


@dataclass(frozen=True)
class ZeroAuxParams:
    kind = "zero-aux"
    g01: complex
    g12: complex
    g20: complex


SchemeParams = Union[
    RraParams,
    MixedSpecialParams,
    MixedGeneralParams,
    UnambiguousSpecialParams,
    ZeroAuxParams,
]


@dataclass(frozen=True, eq=False)
class Scheme:
    """Validated discrimination scheme on ``system (x) ancilla``."""

    ensemble: Ensemble
    ancilla_dim: int
    coupling: np.ndarray
    povm: Povm
    analytic_success: float
    params: SchemeParams
    branch_note: str = ""

    def __post_init__(self):
        if self.ancilla_dim < 1:
            raise DimensionMismatchError(f"ancilla dim {self.ancilla_dim} < 1")
        u = linalg.as_cmatrix(self.coupling)
        joint = self.ensemble.dim * self.ancilla_dim
        if u.shape != (joint, joint):
            raise DimensionMismatchError(
                f"coupling shape {u.shape}, expected {(joint, joint)}"
            )
        if self.povm.dim != joint:
            raise DimensionMismatchError(
                f"POVM dim {self.povm.dim}, joint space dim {joint}"
            )
        res = linalg.frobenius(linalg.dag(u) @ u - np.eye(joint))
        if res > TOL_UNITARY:
            raise InvariantViolationError(f"coupling unitarity residual {res:.3e}")
        if not -TOL_BOUNDARY <= self.analytic_success <= 1.0 + TOL_BOUNDARY:
            raise InvariantViolationError(
                f"analytic success {self.analytic_success!r} outside [0, 1]"
            )
        object.__setattr__(self, "coupling", u)
        u.setflags(write=False)

        # Closed form must match the measurement pipeline on the spot.
        total = 0.0
        for i, w in enumerate(coupled_states(self)):
            x = self.povm.identify_outcome(i)
            total += self.ensemble.priors[i] * float(
                (np.conj(w) @ self.povm.elements[x] @ w).real
            )
        if abs(total - self.analytic_success) > TOL_PIPELINE:
            raise InvariantViolationError(
                f"pipeline success {total!r} vs analytic {self.analytic_success!r}"
            )

    @property
    def joint_dim(self) -> int:
        return self.ensemble.dim * self.ancilla_dim


def coupled_states(scheme: Scheme) -> tuple[np.ndarray, ...]:
    """Joint-space vectors: coupling applied to each state (x) ancilla |0>."""
    out = []
    for s in scheme.ensemble.states:
        if scheme.ancilla_dim > 1:
            anc = np.zeros(scheme.ancilla_dim, dtype=np.complex128)
            anc[0] = 1.0
            v = np.kron(s.amplitudes, anc)
        else:
            v = s.amplitudes.astype(np.complex128)
        out.append(scheme.coupling @ v)
    return tuple(out)


def coupled_ensemble(scheme: Scheme) -> Ensemble:
    """The coupled states as an ensemble on the joint space."""
    return Ensemble(
        tuple(Ket(w) for w in coupled_states(scheme)), scheme.ensemble.priors
    )


def scheme_confusion(scheme: Scheme) -> np.ndarray:
    """Confusion matrix (state x outcome) of the scheme's pipeline."""
    return measurement.confusion_matrix(coupled_ensemble(scheme), scheme.povm)


def _proj(vec: np.ndarray) -> np.ndarray:
    return np.outer(vec, np.conj(vec))


def _basis(dim: int, index: int) -> np.ndarray:
    e = np.zeros(dim, dtype=np.complex128)
    e[index] = 1.0
    return e


def _plus_minus(dim: int) -> tuple[np.ndarray, np.ndarray]:
    plus = np.zeros(dim, dtype=np.complex128)
    plus[0] = plus[1] = _HALF_SQRT2
    minus = np.zeros(dim, dtype=np.complex128)
    minus[0] = _HALF_SQRT2
    minus[1] = -_HALF_SQRT2
    return plus, minus


def _ancilla_projectors() -> tuple[np.ndarray, np.ndarray]:
    return _proj(_basis(2, 0)), _proj(_basis(2, 1))


def _validate_priors(priors, n: int) -> np.ndarray:
    p = np.array(priors, dtype=float).reshape(-1)
    if p.shape[0] != n:
        raise DimensionMismatchError(f"expected {n} priors, got {p.shape[0]}")
    return p


def build_rra(
    psi_plus: Ket,
    psi_minus: Ket,
    priors,
    c_plus: complex,
    c_minus: complex,
) -> Scheme:
    """Unambiguous two-state scheme on a qubit plus qubit ancilla.

    The failure amplitudes must satisfy ``conj(c_plus) * c_minus =
    <psi_minus|psi_plus>``; the joint unitary sends each input to an
    identifying branch in the +/- basis with the ancilla left in |0>,
    plus a failure branch flagged by the ancilla in |1>.  Success is
    ``1 - p_plus |c_plus|^2 - p_minus |c_minus|^2``.
    """
    if psi_plus.dim != 2 or psi_minus.dim != 2:
        raise DimensionMismatchError("two-state scheme requires qubit inputs")
    p = _validate_priors(priors, 2)
    c_plus = complex(c_plus)
    c_minus = complex(c_minus)
    for name, c in (("c_plus", c_plus), ("c_minus", c_minus)):
        if abs(c) > 1.0 + TOL_BOUNDARY:
            raise AmplitudeOutOfRangeError(f"|{name}| = {abs(c)!r} exceeds 1")
    overlap = complex(np.conj(psi_minus.amplitudes) @ psi_plus.amplitudes)
    if abs(np.conj(c_plus) * c_minus - overlap) > 1e-10:
        raise OverlapConstraintViolatedError(
            f"conj(c_plus)*c_minus = {np.conj(c_plus) * c_minus!r} "
            f"but <psi_minus|psi_plus> = {overlap!r}"
        )

    e0a = _basis(2, 0)
    e1a = _basis(2, 1)
    plus, minus = _plus_minus(2)
    v_plus = np.kron(psi_plus.amplitudes, e0a)
    v_minus = np.kron(psi_minus.amplitudes, e0a)
    img_plus = np.sqrt(max(0.0, 1.0 - abs(c_plus) ** 2)) * np.kron(plus, e0a)
    img_plus = img_plus + c_plus * np.kron(_basis(2, 0), e1a)
    img_minus = np.sqrt(max(0.0, 1.0 - abs(c_minus) ** 2)) * np.kron(minus, e0a)
    img_minus = img_minus + c_minus * np.kron(_basis(2, 0), e1a)
    u = linalg.isometry_completion([v_plus, v_minus], [img_plus, img_minus], 4)

    p0a, p1a = _ancilla_projectors()
    povm = Povm(
        elements=(
            np.kron(_proj(plus), p0a),
            np.kron(_proj(minus), p0a),
            np.kron(np.eye(2), p1a),
        ),
        labels=(
            OutcomeLabel.identify(0),
            OutcomeLabel.identify(1),
            OutcomeLabel.inconclusive(),
        ),
    )
    analytic = 1.0 - p[0] * abs(c_plus) ** 2 - p[1] * abs(c_minus) ** 2
    return Scheme(
        ensemble=Ensemble((psi_plus, psi_minus), p),
        ancilla_dim=2,
        coupling=u,
        povm=povm,
        analytic_success=analytic,
        params=RraParams(c_plus=c_plus, c_minus=c_minus),
    )


@dataclass(frozen=True)
class XuResult:
    """Piecewise maximum of unambiguous success for symmetric overlaps.

    ``permutation`` maps positions of the internally sorted priors back to
    the caller's order: ``sorted_priors[k] == priors[permutation[k]]``.
    """

    value: float
    case: str
    permutation: tuple[int, int, int]


def xu_max_unambiguous(gamma: float, priors) -> XuResult:
    """Best unambiguous success for three states with equal overlaps.

    The priors are sorted ascending internally (p0 <= p1 <= p2); the four
    regimes are checked in order and the first match wins.  When the two
    largest priors coincide the regime thresholds diverge and the value
    ``1 - gamma`` is returned with case tag ``"1-limit"``.
    """
    gamma = float(gamma)
    if not 0.0 <= gamma < 1.0:
        raise InvalidGammaError(f"symmetric overlap {gamma!r} outside [0, 1)")
    p_in = _validate_priors(priors, 3)
    if p_in.min() < 0.0 or abs(p_in.sum() - 1.0) > 1e-12:
        raise ParamOutOfRangeError("priors must be non-negative and sum to 1")
    perm = tuple(int(i) for i in np.argsort(p_in, kind="stable"))
    p0, p1, p2 = (float(p_in[i]) for i in perm)
    r0, r1, r2 = np.sqrt(p0), np.sqrt(p1), np.sqrt(p2)

    spread = r2 - r1
    if spread < 1e-12:
        return XuResult(1.0 - gamma, "1-limit", perm)
    g1 = r1 / spread
    g2 = r0 / spread
    if g2 >= 1.0:
        return XuResult(1.0 - gamma, "1", perm)
    if gamma >= g1:
        value = 1.0 - p0 - p1 - 2.0 * p2 * gamma**2 / (gamma + 1.0)
        return XuResult(value, "2", perm)
    if g1 >= gamma >= g2:
        value = 1.0 - p0 - 2.0 * r1 * r2 * gamma - spread**2 * gamma**2
        return XuResult(value, "3", perm)
    value = 1.0 - 2.0 * (r1 * r2 + r0 * r2 - r0 * r1) * gamma
    return XuResult(value, "4", perm)


def _three_state_gram(gamma: float, alpha: float) -> np.ndarray:
    return np.array(
        [
            [1.0, alpha, gamma],
            [alpha, 1.0, gamma],
            [gamma, gamma, 1.0],
        ],
        dtype=np.complex128,
    )


def _mixed_povm() -> Povm:
    plus, minus = _plus_minus(3)
    p0a, p1a = _ancilla_projectors()
    return Povm(
        elements=(
            np.kron(_proj(plus), p0a),
            np.kron(_proj(minus), p0a),
            np.kron(_proj(_basis(3, 2)), p0a),
            np.kron(np.eye(3), p1a),
        ),
        labels=(
            OutcomeLabel.identify(0),
            OutcomeLabel.identify(1),
            OutcomeLabel.identify(2),
            OutcomeLabel.inconclusive(),
        ),
    )


def _mixed_coupling(ensemble: Ensemble, gamma: float, c2: complex) -> np.ndarray:
    """Joint unitary for the mixed three-state schemes.

    Splits each of the first two coupled states into the component along
    the third plus an orthogonal remainder, then maps the remainders to
    +/- branches whose interference term carries ``c = sqrt(c2)``.
    """
    e0a = _basis(2, 0)
    e1a = _basis(2, 1)
    v = [np.kron(s.amplitudes, e0a) for s in ensemble.states]
    scale = np.sqrt(1.0 - gamma**2)
    psi0 = (v[0] - gamma * v[2]) / scale
    psi1 = (v[1] - gamma * v[2]) / scale
    c = np.sqrt(np.complex128(c2))
    r2 = 1.0 - abs(c) ** 2
    r = np.sqrt(r2) if r2 > 1e-12 else 0.0
    plus, minus = _plus_minus(3)
    img2 = np.kron(_basis(3, 2), e0a)
    img_psi0 = r * np.kron(plus, e0a) + np.conj(c) * np.kron(_basis(3, 1), e1a)
    img_psi1 = r * np.kron(minus, e0a) + c * np.kron(_basis(3, 1), e1a)
    if r == 0.0:
        # |c| = 1 makes psi1 a multiple of psi0 (and img_psi1 of img_psi0),
        # so only the independent pair is pinned; linearity carries the rest.
        return linalg.isometry_completion([v[2], psi0], [img2, img_psi0], 6)
    return linalg.isometry_completion([v[2], psi0, psi1], [img2, img_psi0, img_psi1], 6)


def build_mixed_special(gamma: float, priors, allow_trivial: bool = False) -> Scheme:
    """Mixed scheme for two orthogonal states both overlapping a third.

    Overlaps: ``<u2|u0> = <u2|u1> = gamma`` (real, ``0 < |gamma| <=
    1/sqrt(2)``), ``<u0|u1> = 0``.  Outcomes 0 and 1 identify u0 and u1
    unambiguously, outcome 2 identifies u2 but can be triggered by the
    others, and the inconclusive outcome never fires on u2.  Success is
    ``1 - 2 gamma^2 (1 - p2)``.

    ``allow_trivial`` admits the boundary value ``gamma = 0``.
    """
    gamma = float(gamma)
    p = _validate_priors(priors, 3)
    if gamma == 0.0 and not allow_trivial:
        raise GammaOutOfRangeError("gamma = 0 is degenerate (pass allow_trivial)")
    if abs(gamma) > _HALF_SQRT2 + TOL_BOUNDARY:
        raise GammaOutOfRangeError(
            f"|gamma| = {abs(gamma)!r} exceeds 1/sqrt(2); overlaps not realizable"
        )
    ens = states_from_gram(GramSpec(_three_state_gram(gamma, 0.0), p))
    c2 = -(gamma**2) / (1.0 - gamma**2)
    u = _mixed_coupling(ens, gamma, c2)
    analytic = 1.0 - 2.0 * gamma**2 * (1.0 - p[2])
    return Scheme(
        ensemble=ens,
        ancilla_dim=2,
        coupling=u,
        povm=_mixed_povm(),
        analytic_success=analytic,
        params=MixedSpecialParams(gamma=gamma),
    )


def build_mixed_general(
    gamma: float, alpha: float, priors, allow_trivial: bool = False
) -> Scheme:
    """Mixed scheme with the first pair's overlap freed to ``alpha``.

    Overlaps: ``<u2|u0> = <u2|u1> = gamma``, ``<u0|u1> = alpha``, both
    real.  Success is ``1 - (2 gamma^2 - alpha)(1 - p2)`` for
    ``alpha < gamma^2`` and ``1 - alpha (1 - p2)`` otherwise.

    ``allow_trivial`` admits the boundary values ``gamma = 0``,
    ``alpha = 0`` and ``alpha = 1``; ``|gamma| = 1`` is always rejected
    because the construction divides by ``1 - gamma^2``.
    """
    gamma = float(gamma)
    alpha = float(alpha)
    p = _validate_priors(priors, 3)
    if abs(gamma) >= 1.0:
        raise ParamOutOfRangeError(f"|gamma| = {abs(gamma)!r} must be < 1")
    if not allow_trivial:
        if gamma == 0.0:
            raise GammaOutOfRangeError("gamma = 0 is degenerate (pass allow_trivial)")
        if alpha in (0.0, 1.0):
            raise ParamOutOfRangeError(
                f"alpha = {alpha!r} is a boundary value (pass allow_trivial)"
            )
    if abs(alpha) > 1.0 + TOL_BOUNDARY:
        raise GramNotPsdError(f"|alpha| = {abs(alpha)!r} exceeds 1")
    gram = _three_state_gram(gamma, alpha)
    w = np.linalg.eigvalsh(gram)
    if w.min() < -linalg.TOL_PSD:
        raise GramNotPsdError(
            f"overlap matrix eigenvalue {w.min():.3e}; need 1 + alpha >= 2 gamma^2"
        )
    if 1.0 - gamma**2 - abs(alpha - gamma**2) < -TOL_BOUNDARY:
        raise ParamOutOfRangeError("identifying amplitude would be imaginary")
    ens = states_from_gram(GramSpec(gram, p))
    c2 = (alpha - gamma**2) / (1.0 - gamma**2)
    u = _mixed_coupling(ens, gamma, c2)
    if alpha >= gamma**2:
        analytic = 1.0 - alpha * (1.0 - p[2])
        note = "alpha >= gamma^2: success = 1 - alpha*(1 - p2)"
    else:
        analytic = 1.0 - (2.0 * gamma**2 - alpha) * (1.0 - p[2])
        note = "alpha < gamma^2: success = 1 - (2*gamma^2 - alpha)*(1 - p2)"
    return Scheme(
        ensemble=ens,
        ancilla_dim=2,
        coupling=u,
        povm=_mixed_povm(),
        analytic_success=analytic,
        params=MixedGeneralParams(gamma=gamma, alpha=alpha),
        branch_note=note,
    )


def build_unambiguous_special(gamma: float, x0: float, x1: float, priors) -> Scheme:
    """Fully unambiguous family over the mixed-special geometry.

    ``x0, x1`` are failure probabilities for the first two states; the
    third state's identifying amplitude follows from the overlap
    constraint, giving success ``1 - p0 x0 - p1 x1 - p2 gamma^2 (1/x0 +
    1/x1)``.  Requires ``x_i in [gamma^2, 1]`` and
    ``gamma^2 (1/x0 + 1/x1) <= 1``.
    """
    gamma = float(gamma)
    x0 = float(x0)
    x1 = float(x1)
    p = _validate_priors(priors, 3)
    if abs(gamma) > _HALF_SQRT2 + TOL_BOUNDARY:
        raise GammaOutOfRangeError(f"|gamma| = {abs(gamma)!r} exceeds 1/sqrt(2)")
    g2 = gamma**2
    for name, x in (("x0", x0), ("x1", x1)):
        if not g2 - TOL_BOUNDARY <= x <= 1.0 + TOL_BOUNDARY:
            raise InfeasibleAmplitudesError(
                f"{name} = {x!r} outside [gamma^2, 1] = [{g2!r}, 1]"
            )
    penalty = 0.0
    for x in (x0, x1):
        if x > 0.0:
            penalty += g2 / x
        elif g2 > 0.0:
            raise InfeasibleAmplitudesError("zero failure amplitude with gamma != 0")
    if penalty > 1.0 + TOL_BOUNDARY:
        raise InfeasibleAmplitudesError(
            f"gamma^2 (1/x0 + 1/x1) = {penalty!r} exceeds 1"
        )

    ens = states_from_gram(GramSpec(_three_state_gram(gamma, 0.0), p))
    e0a = _basis(2, 0)
    e1a = _basis(2, 1)
    v = [np.kron(s.amplitudes, e0a) for s in ens.states]
    a0 = np.sqrt(x0)
    a1 = np.sqrt(x1)
    ap0 = gamma / a0 if x0 > 0.0 else 0.0
    ap1 = gamma / a1 if x1 > 0.0 else 0.0
    img0 = np.sqrt(max(0.0, 1.0 - x0)) * np.kron(_basis(3, 0), e0a)
    img0 = img0 + a0 * np.kron(_basis(3, 0), e1a)
    img1 = np.sqrt(max(0.0, 1.0 - x1)) * np.kron(_basis(3, 1), e0a)
    img1 = img1 + a1 * np.kron(_basis(3, 1), e1a)
    img2 = np.sqrt(max(0.0, 1.0 - ap0**2 - ap1**2)) * np.kron(_basis(3, 2), e0a)
    img2 = img2 + ap0 * np.kron(_basis(3, 0), e1a) + ap1 * np.kron(_basis(3, 1), e1a)
    u = linalg.isometry_completion(v, [img0, img1, img2], 6)

    p0a, p1a = _ancilla_projectors()
    povm = Povm(
        elements=(
            np.kron(_proj(_basis(3, 0)), p0a),
            np.kron(_proj(_basis(3, 1)), p0a),
            np.kron(_proj(_basis(3, 2)), p0a),
            np.kron(np.eye(3), p1a),
        ),
        labels=(
            OutcomeLabel.identify(0),
            OutcomeLabel.identify(1),
            OutcomeLabel.identify(2),
            OutcomeLabel.inconclusive(),
        ),
    )
    analytic = 1.0 - p[0] * x0 - p[1] * x1 - p[2] * (ap0**2 + ap1**2)
    return Scheme(
        ensemble=ens,
        ancilla_dim=2,
        coupling=u,
        povm=povm,
        analytic_success=analytic,
        params=UnambiguousSpecialParams(gamma=gamma, x0=x0, x1=x1),
    )


def zero_aux_posterior(g12: complex, g20: complex, priors) -> float:
    """Posterior probability of state 2 given the outcome labeled 2."""
    p = _validate_priors(priors, 3)
    denom = p[0] * abs(g20) ** 2 + p[1] * abs(g12) ** 2 + p[2]
    if denom <= 1e-12:
        raise ZeroProbabilityOutcomeError("outcome 2 has zero probability")
    return float(p[2] / denom)


def build_zero_aux(g01: complex, g12: complex, g20: complex, priors) -> Scheme:
    """Ancilla-free projective scheme for cyclically consistent overlaps.

    Overlap convention: ``g01 = <u0|u1>``, ``g12 = <u1|u2>``,
    ``g20 = <u2|u0>``; the construction requires ``conj(g12 * g20) =
    g01``.  Removing each state's component along u2 leaves two
    orthonormal vectors, and measuring in the basis they define
    identifies u0 and u1 without error.  The third outcome is ambiguous;
    its posterior for u2 is ``p2 / (p0 |g20|^2 + p1 |g12|^2 + p2)``.
    """
    g01 = complex(g01)
    g12 = complex(g12)
    g20 = complex(g20)
    p = _validate_priors(priors, 3)
    for name, g in (("g12", g12), ("g20", g20)):
        if abs(g) >= 1.0:
            raise OverlapConstraintViolatedError(f"|{name}| = {abs(g)!r} must be < 1")
    if abs(np.conj(g12 * g20) - g01) > 1e-10:
        raise OverlapConstraintViolatedError(
            f"conj(g12*g20) = {np.conj(g12 * g20)!r} differs from g01 = {g01!r}"
        )
    gram = np.array(
        [
            [1.0, g01, np.conj(g20)],
            [np.conj(g01), 1.0, g12],
            [g20, np.conj(g12), 1.0],
        ],
        dtype=np.complex128,
    )
    w = np.linalg.eigvalsh(gram)
    if w.min() < -linalg.TOL_PSD:
        raise GramNotPsdError(f"overlap matrix eigenvalue {w.min():.3e}")
    ens = states_from_gram(GramSpec(gram, p))
    u0, u1, u2 = (s.amplitudes for s in ens.states)
    psi0 = (u0 - g20 * u2) / np.sqrt(1.0 - abs(g20) ** 2)
    psi1 = (u1 - np.conj(g12) * u2) / np.sqrt(1.0 - abs(g12) ** 2)
    if abs(np.conj(psi0) @ psi1) > 1e-10:
        raise InvariantViolationError("measurement vectors failed to orthogonalize")

    pi0 = _proj(psi0)
    pi1 = _proj(psi1)
    povm = Povm(
        elements=(pi0, pi1, np.eye(3) - pi0 - pi1),
        labels=(
            OutcomeLabel.identify(0),
            OutcomeLabel.identify(1),
            OutcomeLabel.identify(2),
        ),
    )
    analytic = float(
        p[0] * (1.0 - abs(g20) ** 2) + p[1] * (1.0 - abs(g12) ** 2) + p[2]
    )
    posterior = zero_aux_posterior(g12, g20, p)
    return Scheme(
        ensemble=ens,
        ancilla_dim=1,
        coupling=np.eye(3, dtype=np.complex128),
        povm=povm,
        analytic_success=analytic,
        params=ZeroAuxParams(g01=g01, g12=g12, g20=g20),
        branch_note=f"posterior(state 2 | outcome 2) = {posterior:.12g}",
    )


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """Two-term product decomposition of a mixed scheme's output state.

    ``weight`` multiplies the second term; the reconstruction is
    ``(1 - weight) * part_system (x) |0a><0a| + weight * |1><1| (x)
    part_ancilla``.  The ancilla part is returned as a raw Hermitian
    matrix with its spectrum, which may contain a negative eigenvalue:
    the identity holds as operators either way.
    """

    weight: float
    part_system: np.ndarray
    part_ancilla: np.ndarray
    reconstruction_residual: float
    ancilla_part_spectrum: np.ndarray


def separable_decomposition(scheme: Scheme) -> SeparableDecomposition:
    """Split the coupled average state into system and ancilla factors.

    Applies to the mixed schemes with equal first two priors.  For the
    general geometry the pair overlap must satisfy ``alpha < gamma^2``;
    at or above that boundary the second term vanishes or the closed
    form degenerates.
    """
    params = scheme.params
    if isinstance(params, MixedSpecialParams):
        gamma, alpha = params.gamma, 0.0
        mu2 = gamma**2
    elif isinstance(params, MixedGeneralParams):
        gamma, alpha = params.gamma, params.alpha
        mu2 = gamma**2 - alpha
        if mu2 <= 0.0:
            raise HypothesisViolatedError(
                f"alpha = {alpha!r} must lie below gamma^2 = {gamma**2!r}"
            )
    else:
        raise HypothesisViolatedError(
            f"decomposition applies to mixed schemes, not {type(params).__name__}"
        )
    p = scheme.ensemble.priors
    if abs(p[0] - p[1]) > 1e-12:
        raise HypothesisViolatedError(f"requires p0 = p1, got {p[0]!r} and {p[1]!r}")
    q = 1.0 - float(p[2])
    if q <= 1e-12:
        raise HypothesisViolatedError("p2 = 1 leaves an empty ancilla part")

    b2 = max(0.0, 1.0 + alpha - 2.0 * gamma**2)
    # Mirror the coupling's degenerate-branch condition exactly: when the
    # unitary snapped its +/- amplitude to zero, the decomposition must too.
    c2 = (alpha - gamma**2) / (1.0 - gamma**2)
    if 1.0 - abs(c2) <= 1e-12:
        b2 = 0.0
    weight = q * mu2
    plus, minus = _plus_minus(3)
    e0s, e2s = _basis(3, 0), _basis(3, 2)
    cross = np.outer(e0s, np.conj(e2s)) + np.outer(e2s, np.conj(e0s))
    sys_part = (
        0.5 * q * b2 * (_proj(plus) + _proj(minus))
        + (q * gamma**2 + float(p[2])) * _proj(e2s)
        + _HALF_SQRT2 * q * gamma * np.sqrt(b2) * cross
    ) / (1.0 - weight)

    z = np.sqrt(np.complex128((alpha - gamma**2) * b2))
    e0a, e1a = _basis(2, 0), _basis(2, 1)
    anc_part = (
        mu2 * _proj(e1a)
        + _HALF_SQRT2 * z * np.outer(e0a, np.conj(e1a))
        + _HALF_SQRT2 * np.conj(z) * np.outer(e1a, np.conj(e0a))
    ) / mu2
    # The special-geometry closed form carries the prior weight q through
    # both the numerator and the normalization; it cancels, so the single
    # expression above covers both geometries.

    for name, part in (("system", sys_part), ("ancilla", anc_part)):
        tr = float(np.trace(part).real)
        if abs(tr - 1.0) > 1e-12:
            raise InvariantViolationError(f"{name} part trace {tr!r} differs from 1")

    rho_pipe = np.zeros((6, 6), dtype=np.complex128)
    for prior, wvec in zip(p, coupled_states(scheme)):
        rho_pipe += prior * np.outer(wvec, np.conj(wvec))
    recon = (1.0 - weight) * np.kron(sys_part, _proj(e0a))
    recon = recon + weight * np.kron(_proj(_basis(3, 1)), anc_part)
    residual = linalg.frobenius(rho_pipe - recon)
    if residual > 1e-10:
        raise InvariantViolationError(f"decomposition residual {residual:.3e} > 1e-10")

    spectrum = np.linalg.eigvalsh((anc_part + linalg.dag(anc_part)) / 2.0)
    sys_part.setflags(write=False)
    anc_part.setflags(write=False)
    spectrum.setflags(write=False)
    return SeparableDecomposition(
        weight=weight,
        part_system=sys_part,
        part_ancilla=anc_part,
        reconstruction_residual=residual,
        ancilla_part_spectrum=spectrum,
    )
