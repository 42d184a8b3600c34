"""Seeded simulation of schemes and the independent brute-force oracle.

Sampling uses the Philox counter-based generator (numpy's implementation)
with a fixed stream discipline, so results are reproducible bit-for-bit
across runs, platforms, and shard splits: shard k of a run seeded with s
uses the 128-bit Philox key ``(k << 64) | (s mod 2^64)`` and draws an
(n_k, 2) uniform block, column 0 selecting the prepared state and column
1 the measurement outcome, both by inverse CDF.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import measurement
from .analysis import ComparisonRecord, theorem21_check, theorem31_check
from .errors import (
    DiscriminationError,
    EmptyGridError,
    InvariantViolationError,
    ParamOutOfRangeError,
)
from .schemes import Scheme, coupled_ensemble
from .states import DensityMatrix


def brute_force_success(scheme: Scheme) -> float:
    """Success probability recomputed end to end, ignoring the closed form.

    Couples each state with the ancilla, applies the unitary, forms the
    density matrix, and traces it against the POVM element that identifies
    the state.  ``analytic_success`` is never consulted.
    """
    ens = coupled_ensemble(scheme)
    total = 0.0
    for i, ket in enumerate(ens.states):
        rho = DensityMatrix.pure(ket)
        element = scheme.povm.elements[scheme.povm.identify_outcome(i)]
        total += float(ens.priors[i]) * float(np.trace(element @ rho.matrix).real)
    return float(min(1.0, max(0.0, total)))


@dataclass(frozen=True, eq=False)
class SimResult:
    """Outcome tallies of a seeded simulation run.

    ``counts[i, x]`` is the number of trials that prepared state i and
    observed outcome x.  Equality is exact (bitwise), supporting the
    determinism contract: same scheme, n, and seed give equal results.
    """

    n: int
    counts: np.ndarray
    empirical_success: float
    std_error: float
    seed: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        if counts.ndim != 2 or counts.min() < 0:
            raise InvariantViolationError("counts must be a non-negative matrix")
        if int(counts.sum()) != self.n:
            raise InvariantViolationError(
                f"counts sum {int(counts.sum())} differs from n = {self.n}"
            )
        if not 0.0 <= self.empirical_success <= 1.0:
            raise InvariantViolationError(
                f"empirical success {self.empirical_success!r} outside [0, 1]"
            )
        expected = float(
            np.sqrt(self.empirical_success * (1.0 - self.empirical_success) / self.n)
        )
        if abs(self.std_error - expected) > 1e-15:
            raise InvariantViolationError("std_error inconsistent with p-hat and n")
        counts.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, SimResult):
            return NotImplemented
        return (
            self.n == other.n
            and self.seed == other.seed
            and np.array_equal(self.counts, other.counts)
            and self.empirical_success == other.empirical_success
            and self.std_error == other.std_error
        )

    __hash__ = None


def simulate(scheme: Scheme, n: int, seed: int, shards: int = 1) -> SimResult:
    """Sample n preparation/measurement trials of the scheme.

    Per trial: draw the prepared state from the priors, then the outcome
    from that state's exact outcome distribution (computed once from the
    coupled states, clamped and renormalized so the inverse CDF is
    unbiased).  Deterministic given (scheme, n, seed, shards); the default
    single shard is the reference stream, and sharded runs remain
    reproducible but produce a different (merged) tally.
    """
    n = int(n)
    if n < 1:
        raise ParamOutOfRangeError(f"trial count {n} must be >= 1")
    shards = int(shards)
    if shards < 1 or shards > n:
        raise ParamOutOfRangeError(f"shards = {shards} outside [1, n]")
    seed = int(seed)

    ens = coupled_ensemble(scheme)
    conf = measurement.confusion_matrix(ens, scheme.povm)
    n_states, n_out = conf.shape
    cum_priors = np.cumsum(scheme.ensemble.priors)
    cum_priors[-1] = 1.0
    rows = conf / conf.sum(axis=1, keepdims=True)
    cum_rows = np.cumsum(rows, axis=1)
    cum_rows[:, -1] = 1.0

    counts = np.zeros((n_states, n_out), dtype=np.int64)
    base, rem = divmod(n, shards)
    for k in range(shards):
        n_k = base + (1 if k < rem else 0)
        if n_k == 0:
            continue
        key = (k << 64) | (seed % (1 << 64))
        rng = np.random.Generator(np.random.Philox(key=key))
        u = rng.random((n_k, 2))
        states = np.searchsorted(cum_priors, u[:, 0], side="right")
        outcomes = np.empty(n_k, dtype=np.int64)
        for i in range(n_states):
            mask = states == i
            if mask.any():
                outcomes[mask] = np.searchsorted(
                    cum_rows[i], u[mask, 1], side="right"
                )
        flat = np.bincount(
            states * n_out + outcomes, minlength=n_states * n_out
        )
        counts += flat.reshape(n_states, n_out)

    hits = sum(
        int(counts[i, scheme.povm.identify_outcome(i)]) for i in range(n_states)
    )
    p_hat = hits / n
    return SimResult(
        n=n,
        counts=counts,
        empirical_success=float(p_hat),
        std_error=float(np.sqrt(p_hat * (1.0 - p_hat) / n)),
        seed=seed,
    )


@dataclass(frozen=True)
class SkippedPoint:
    """Grid point rejected by a check's domain guards, with the error code."""

    gamma: float
    priors: tuple[float, float, float]
    code: str


@dataclass(frozen=True)
class SweepResult:
    records: tuple[ComparisonRecord, ...]
    skipped: tuple[SkippedPoint, ...]

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if not r.verdict)

    @property
    def min_margin(self) -> float:
        if not self.records:
            return float("nan")
        return min(r.margin for r in self.records)


_CHECKS = {
    "2.1": theorem21_check,
    "theorem21": theorem21_check,
    "mixed-special": theorem21_check,
    "3.1": theorem31_check,
    "theorem31": theorem31_check,
    "mixed-general": theorem31_check,
}


def sweep(check: str, gammas, priors_list) -> SweepResult:
    """Run a comparison check over a parameter-by-priors grid.

    ``check`` selects the comparison: ``"2.1"`` (or the mixed-special
    builder id) for the family comparison, ``"3.1"`` (or mixed-general)
    for the symmetric-overlap comparison.  Grid points outside a check's
    domain are skipped and reported, not fatal.  Iteration order is
    gammas-major and deterministic.
    """
    if check not in _CHECKS:
        raise ParamOutOfRangeError(
            f"unknown check {check!r}; expected one of {sorted(_CHECKS)}"
        )
    fn = _CHECKS[check]
    gammas = [float(g) for g in gammas]
    priors_list = [tuple(float(x) for x in p) for p in priors_list]
    if not gammas or not priors_list:
        raise EmptyGridError("empty parameter grid")
    records = []
    skipped = []
    for g in gammas:
        for p in priors_list:
            try:
                records.append(fn(g, p))
            except DiscriminationError as exc:
                skipped.append(SkippedPoint(gamma=g, priors=p, code=exc.code))
    return SweepResult(records=tuple(records), skipped=tuple(skipped))
