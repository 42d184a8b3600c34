"""JSON and CSV encodings for every value the CLI emits or reloads.

Complex numbers serialize as two-element ``[re, im]`` arrays; matrices as
nested row lists of those pairs; outcome labels as the tagged strings
``"identify:<i>"`` and ``"inconclusive"``.  Loaders rebuild values through
the public constructors, so every invariant is re-checked on the way in.

CSV output is byte-stable: floats at 12 significant digits, '.' decimal
separator, '\\n' line endings.
"""
from __future__ import annotations

from typing import Any, Optional

import numpy as np

from .analysis import ComparisonRecord
from .errors import LabelMismatchError, ParamOutOfRangeError
from .measurement import OutcomeLabel, Povm
from .montecarlo import SimResult
from .schemes import (
    MixedGeneralParams,
    MixedSpecialParams,
    RraParams,
    Scheme,
    SchemeParams,
    UnambiguousSpecialParams,
    ZeroAuxParams,
)
from .states import Ensemble, GramSpec, Ket

CSV_HEADER = (
    "gamma,alpha,p0,p1,p2,p_mixed,reference_kind,p_una_reference,margin,verdict"
)


def format_float(value: float) -> str:
    """Fixed 12-significant-digit rendering used by every CSV cell."""
    value = float(value)
    if value == 0.0:
        value = 0.0  # fold -0.0
    return "%.12g" % value


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def vector_to_json(v: np.ndarray) -> list[list[float]]:
    return [complex_to_json(z) for z in np.asarray(v).ravel()]


def vector_from_json(rows) -> np.ndarray:
    return np.array([complex_from_json(p) for p in rows], dtype=np.complex128)


def matrix_to_json(m: np.ndarray) -> list[list[list[float]]]:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array(
        [[complex_from_json(p) for p in row] for row in rows], dtype=np.complex128
    )


def ket_to_json(ket: Ket) -> dict:
    return {"amplitudes": vector_to_json(ket.amplitudes)}


def ket_from_json(data) -> Ket:
    return Ket(vector_from_json(data["amplitudes"]))


def ensemble_to_json(ens: Ensemble) -> dict:
    return {
        "states": [vector_to_json(s.amplitudes) for s in ens.states],
        "priors": [float(p) for p in ens.priors],
    }


def ensemble_from_json(data) -> Ensemble:
    states = tuple(Ket(vector_from_json(v)) for v in data["states"])
    return Ensemble(states, np.array(data["priors"], dtype=float))


def gram_spec_to_json(spec: GramSpec) -> dict:
    return {
        "overlaps": matrix_to_json(spec.overlaps),
        "priors": [float(p) for p in spec.priors],
    }


def gram_spec_from_json(data) -> GramSpec:
    return GramSpec(
        matrix_from_json(data["overlaps"]), np.array(data["priors"], dtype=float)
    )


def label_to_json(label: OutcomeLabel) -> str:
    return str(label)


def label_from_json(text: str) -> OutcomeLabel:
    if text == "inconclusive":
        return OutcomeLabel.inconclusive()
    if text.startswith("identify:"):
        return OutcomeLabel.identify(int(text[len("identify:") :]))
    raise LabelMismatchError(f"unknown outcome label {text!r}")


def povm_to_json(povm: Povm) -> dict:
    return {
        "elements": [matrix_to_json(e) for e in povm.elements],
        "labels": [label_to_json(lab) for lab in povm.labels],
    }


def povm_from_json(data) -> Povm:
    return Povm(
        elements=tuple(matrix_from_json(e) for e in data["elements"]),
        labels=tuple(label_from_json(t) for t in data["labels"]),
    )


def params_to_json(params: SchemeParams) -> dict:
    if isinstance(params, RraParams):
        return {
            "kind": params.kind,
            "c_plus": complex_to_json(params.c_plus),
            "c_minus": complex_to_json(params.c_minus),
        }
    if isinstance(params, MixedSpecialParams):
        return {"kind": params.kind, "gamma": params.gamma}
    if isinstance(params, MixedGeneralParams):
        return {"kind": params.kind, "gamma": params.gamma, "alpha": params.alpha}
    if isinstance(params, UnambiguousSpecialParams):
        return {
            "kind": params.kind,
            "gamma": params.gamma,
            "x0": params.x0,
            "x1": params.x1,
        }
    if isinstance(params, ZeroAuxParams):
        return {
            "kind": params.kind,
            "g01": complex_to_json(params.g01),
            "g12": complex_to_json(params.g12),
            "g20": complex_to_json(params.g20),
        }
    raise ParamOutOfRangeError(f"unknown params type {type(params).__name__}")


def params_from_json(data) -> SchemeParams:
    kind = data.get("kind")
    if kind == "rra":
        return RraParams(
            c_plus=complex_from_json(data["c_plus"]),
            c_minus=complex_from_json(data["c_minus"]),
        )
    if kind == "mixed-special":
        return MixedSpecialParams(gamma=float(data["gamma"]))
    if kind == "mixed-general":
        return MixedGeneralParams(
            gamma=float(data["gamma"]), alpha=float(data["alpha"])
        )
    if kind == "unambiguous-special":
        return UnambiguousSpecialParams(
            gamma=float(data["gamma"]),
            x0=float(data["x0"]),
            x1=float(data["x1"]),
        )
    if kind == "zero-aux":
        return ZeroAuxParams(
            g01=complex_from_json(data["g01"]),
            g12=complex_from_json(data["g12"]),
            g20=complex_from_json(data["g20"]),
        )
    raise ParamOutOfRangeError(f"unknown params kind {kind!r}")


def scheme_to_json(scheme: Scheme) -> dict:
    return {
        "ensemble": ensemble_to_json(scheme.ensemble),
        "ancilla_dim": scheme.ancilla_dim,
        "coupling": matrix_to_json(scheme.coupling),
        "povm": povm_to_json(scheme.povm),
        "analytic_success": scheme.analytic_success,
        "params": params_to_json(scheme.params),
        "branch_note": scheme.branch_note,
    }


def scheme_from_json(data) -> Scheme:
    # The constructor re-validates unitarity, POVM structure, and the
    # pipeline-vs-analytic agreement, so a tampered file fails loudly.
    return Scheme(
        ensemble=ensemble_from_json(data["ensemble"]),
        ancilla_dim=int(data["ancilla_dim"]),
        coupling=matrix_from_json(data["coupling"]),
        povm=povm_from_json(data["povm"]),
        analytic_success=float(data["analytic_success"]),
        params=params_from_json(data["params"]),
        branch_note=str(data.get("branch_note", "")),
    )


def sim_result_to_json(result: SimResult) -> dict:
    return {
        "n": result.n,
        "counts": [[int(c) for c in row] for row in result.counts],
        "empirical_success": result.empirical_success,
        "std_error": result.std_error,
        "seed": result.seed,
    }


def sim_result_from_json(data) -> SimResult:
    return SimResult(
        n=int(data["n"]),
        counts=np.array(data["counts"], dtype=np.int64),
        empirical_success=float(data["empirical_success"]),
        std_error=float(data["std_error"]),
        seed=int(data["seed"]),
    )


def comparison_record_to_json(record: ComparisonRecord) -> dict:
    return {
        "gamma": record.gamma,
        "alpha": record.alpha,
        "priors": list(record.priors),
        "p_mixed": record.p_mixed,
        "p_una_reference": record.p_una_reference,
        "reference_kind": record.reference_kind,
        "margin": record.margin,
        "verdict": record.verdict,
    }


def comparison_record_from_json(data) -> ComparisonRecord:
    return ComparisonRecord(
        gamma=float(data["gamma"]),
        alpha=None if data.get("alpha") is None else float(data["alpha"]),
        priors=tuple(float(x) for x in data["priors"]),
        p_mixed=float(data["p_mixed"]),
        p_una_reference=float(data["p_una_reference"]),
        reference_kind=str(data["reference_kind"]),
        margin=float(data["margin"]),
        verdict=bool(data["verdict"]),
    )


def comparison_record_to_csv_row(record: ComparisonRecord) -> str:
    alpha = "" if record.alpha is None else format_float(record.alpha)
    cells = [
        format_float(record.gamma),
        alpha,
        format_float(record.priors[0]),
        format_float(record.priors[1]),
        format_float(record.priors[2]),
        format_float(record.p_mixed),
        record.reference_kind,
        format_float(record.p_una_reference),
        format_float(record.margin),
        "true" if record.verdict else "false",
    ]
    return ",".join(cells)


def comparison_records_to_csv(records) -> str:
    """Full CSV document (header plus rows), '\\n' separated, trailing newline."""
    lines = [CSV_HEADER]
    lines.extend(comparison_record_to_csv_row(r) for r in records)
    return "\n".join(lines) + "\n"
