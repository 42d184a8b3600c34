"""Command-line front end.

Subcommands: ``validate`` (rebuild a scheme and print its residuals),
``run`` (emit a scheme's success probabilities and confusion matrix),
``sweep`` (one builder parameter over a range), ``simulate`` (seeded
Monte-Carlo trials), ``compare`` (inequality sweeps with a verdict
summary), ``dump`` (full scheme JSON).

Exit codes: 0 success, 1 usage error, 2 domain error.  Domain errors
print a single machine-readable line ``error: <Code>: <message>``.
File output is atomic (temp file plus rename); ``-`` means stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Optional

import numpy as np

from . import serialize
from .analysis import simplex_grid
from .errors import DiscriminationError
from .linalg import dag, frobenius
from .measurement import confusion_matrix
from .montecarlo import brute_force_success, simulate, sweep
from .schemes import (
    Scheme,
    build_mixed_general,
    build_mixed_special,
    build_rra,
    build_unambiguous_special,
    build_zero_aux,
    coupled_ensemble,
)
from .states import Ket

BUILDER_IDS = (
    "rra",
    "mixed-special",
    "mixed-general",
    "unambiguous-special",
    "zero-aux",
)

_PARAM_KEYS = (
    "gamma",
    "alpha",
    "x0",
    "x1",
    "overlap",
    "c_plus",
    "c_minus",
    "g01",
    "g12",
    "g20",
)


class UsageError(Exception):
    """Bad flags, malformed values, missing required arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=None)
    common.add_argument("--scheme", choices=BUILDER_IDS, default=None)
    for key in _PARAM_KEYS:
        common.add_argument(
            "--" + key.replace("_", "-"), type=float, default=None, dest=key
        )
    common.add_argument("--priors", metavar="P0,P1[,P2]", default=None)
    common.add_argument("--allow-trivial", action="store_true", default=False)
    common.add_argument("--output", metavar="PATH", default=None)
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = _Parser(prog="statedisc", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("validate", parents=[common])
    sub.add_parser("run", parents=[common])
    sub.add_parser("dump", parents=[common])

    p_sim = sub.add_parser("simulate", parents=[common])
    p_sim.add_argument("--n", type=int, default=None)
    p_sim.add_argument("--seed", type=int, default=None)
    p_sim.add_argument("--shards", type=int, default=None)

    p_sweep = sub.add_parser("sweep", parents=[common])
    p_sweep.add_argument("--grid", metavar="PARAM=MIN:MAX:STEP", default=None)

    p_cmp = sub.add_parser("compare", parents=[common])
    p_cmp.add_argument("--theorem", choices=("2.1", "3.1"), default=None)
    p_cmp.add_argument("--gamma-grid", metavar="MIN:MAX:STEP", default=None)
    p_cmp.add_argument("--prior-step", type=float, default=None)
    p_cmp.add_argument("--p2-min", type=float, default=None)
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return data


def _merge_config(args) -> dict:
    """Fold the optional config file and CLI flags into one request map.

    Explicit command-line values win over config-file values.
    """
    cfg = _load_config(args.config) if args.config else {}
    params = dict(cfg.get("params") or {})
    for key in _PARAM_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    cfg["params"] = params
    for key in ("scheme", "output", "format"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "priors", None) is not None:
        cfg["priors"] = _parse_priors_text(args.priors)
    if getattr(args, "allow_trivial", False):
        cfg["allow_trivial"] = True
    for key in ("n", "seed", "shards", "prior_step", "p2_min", "theorem"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "grid", None) is not None:
        cfg.setdefault("grid", {}).update(_parse_grid_text(args.grid))
    if getattr(args, "gamma_grid", None) is not None:
        cfg.setdefault("grid", {})["gamma"] = _parse_range_text(args.gamma_grid)
    return cfg


def _parse_priors_text(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad priors {text!r}: comma-separated numbers") from exc


def _parse_range_text(text: str) -> dict:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"bad range {text!r}: expected MIN:MAX:STEP")
    try:
        lo, hi, step = (float(t) for t in parts)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc
    return {"min": lo, "max": hi, "step": step}


def _parse_grid_text(text: str) -> dict:
    name, eq, rng = text.partition("=")
    if not eq:
        raise UsageError(f"bad grid {text!r}: expected PARAM=MIN:MAX:STEP")
    return {name.strip(): _parse_range_text(rng)}


def _range_values(rng: dict, what: str) -> list[float]:
    try:
        lo, hi, step = float(rng["min"]), float(rng["max"]), float(rng["step"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad {what} grid: need min, max, step") from exc
    if step <= 0.0:
        raise UsageError(f"{what} grid step must be positive")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + k * step, 12) for k in range(max(count, 0))]


def _need(cfg: dict, key: str, command: str):
    if key not in cfg or cfg[key] is None:
        raise UsageError(f"{command} requires --{key.replace('_', '-')}")
    return cfg[key]


def _need_param(cfg: dict, key: str, scheme: str) -> float:
    val = cfg["params"].get(key)
    if val is None:
        raise UsageError(f"scheme {scheme} requires --{key.replace('_', '-')}")
    return float(val)


def _need_priors(cfg: dict, count: int, scheme: str) -> list[float]:
    priors = cfg.get("priors")
    if priors is None:
        raise UsageError(f"scheme {scheme} requires --priors")
    priors = [float(p) for p in priors]
    if len(priors) != count:
        raise UsageError(f"scheme {scheme} takes {count} priors, got {len(priors)}")
    return priors


def _rra_kets(overlap: float) -> tuple[Ket, Ket]:
    """Qubit pair with real inner product ``overlap``, symmetric about |0>."""
    if not -1.0 <= overlap <= 1.0:
        raise UsageError(f"--overlap {overlap!r} outside [-1, 1]")
    c = np.sqrt((1.0 + overlap) / 2.0)
    s = np.sqrt((1.0 - overlap) / 2.0)
    return Ket(np.array([c, s])), Ket(np.array([c, -s]))


def _build_scheme(cfg: dict) -> Scheme:
    scheme = cfg.get("scheme")
    if scheme is None:
        raise UsageError("missing --scheme")
    if scheme not in BUILDER_IDS:
        raise UsageError(f"unknown scheme {scheme!r}; choose from {BUILDER_IDS}")
    allow_trivial = bool(cfg.get("allow_trivial", False))
    if scheme == "rra":
        priors = _need_priors(cfg, 2, scheme)
        plus, minus = _rra_kets(_need_param(cfg, "overlap", scheme))
        return build_rra(
            plus,
            minus,
            priors,
            _need_param(cfg, "c_plus", scheme),
            _need_param(cfg, "c_minus", scheme),
        )
    priors = _need_priors(cfg, 3, scheme)
    if scheme == "mixed-special":
        return build_mixed_special(
            _need_param(cfg, "gamma", scheme), priors, allow_trivial=allow_trivial
        )
    if scheme == "mixed-general":
        return build_mixed_general(
            _need_param(cfg, "gamma", scheme),
            _need_param(cfg, "alpha", scheme),
            priors,
            allow_trivial=allow_trivial,
        )
    if scheme == "unambiguous-special":
        return build_unambiguous_special(
            _need_param(cfg, "gamma", scheme),
            _need_param(cfg, "x0", scheme),
            _need_param(cfg, "x1", scheme),
            priors,
        )
    return build_zero_aux(
        _need_param(cfg, "g01", scheme),
        _need_param(cfg, "g12", scheme),
        _need_param(cfg, "g20", scheme),
        priors,
    )


def _write_output(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".statedisc-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_validate(cfg: dict) -> int:
    scheme = _build_scheme(cfg)
    dim = scheme.joint_dim
    unitarity = frobenius(dag(scheme.coupling) @ scheme.coupling - np.eye(dim))
    completeness = frobenius(
        sum(scheme.povm.elements) - np.eye(dim, dtype=np.complex128)
    )
    delta = abs(brute_force_success(scheme) - scheme.analytic_success)
    lines = [
        f"scheme: {cfg['scheme']}",
        f"unitarity_residual: {unitarity:.3e}",
        f"povm_completeness_residual: {completeness:.3e}",
        f"pipeline_vs_analytic: {delta:.3e}",
        f"analytic_success: {serialize.format_float(scheme.analytic_success)}",
        "ok",
    ]
    _write_output("\n".join(lines) + "\n", cfg.get("output"))
    return 0


def _run_payload(cfg: dict, scheme: Scheme) -> dict:
    conf = confusion_matrix(coupled_ensemble(scheme), scheme.povm)
    return {
        "scheme": cfg["scheme"],
        "params": serialize.params_to_json(scheme.params),
        "priors": [float(p) for p in scheme.ensemble.priors],
        "ancilla_dim": scheme.ancilla_dim,
        "analytic_success": scheme.analytic_success,
        "brute_force_success": brute_force_success(scheme),
        "branch_note": scheme.branch_note,
        "outcome_labels": [str(lab) for lab in scheme.povm.labels],
        "confusion_matrix": [[float(x) for x in row] for row in conf],
    }


def _cmd_run(cfg: dict) -> int:
    scheme = _build_scheme(cfg)
    payload = _run_payload(cfg, scheme)
    if cfg.get("format", "json") == "csv":
        header = "state," + ",".join(payload["outcome_labels"])
        lines = [header]
        for i, row in enumerate(payload["confusion_matrix"]):
            cells = [str(i)] + [serialize.format_float(x) for x in row]
            lines.append(",".join(cells))
        _write_output("\n".join(lines) + "\n", cfg.get("output"))
    else:
        _write_output(_json_text(payload), cfg.get("output"))
    return 0


def _cmd_dump(cfg: dict) -> int:
    if cfg.get("format", "json") == "csv":
        raise UsageError("dump emits JSON only")
    scheme = _build_scheme(cfg)
    _write_output(_json_text(serialize.scheme_to_json(scheme)), cfg.get("output"))
    return 0


def _cmd_simulate(cfg: dict) -> int:
    scheme = _build_scheme(cfg)
    n = int(_need(cfg, "n", "simulate"))
    seed = int(cfg.get("seed", 0))
    shards = int(cfg.get("shards", 1))
    result = simulate(scheme, n, seed, shards=shards)
    if cfg.get("format", "json") == "csv":
        lines = ["state,outcome,count"]
        for i, row in enumerate(result.counts):
            for x, count in enumerate(row):
                lines.append(f"{i},{x},{int(count)}")
        _write_output("\n".join(lines) + "\n", cfg.get("output"))
    else:
        _write_output(_json_text(serialize.sim_result_to_json(result)), cfg.get("output"))
    return 0


_SWEEPABLE = {
    "mixed-special": ("gamma",),
    "mixed-general": ("gamma", "alpha"),
    "unambiguous-special": ("gamma", "x0", "x1"),
}


def _cmd_sweep(cfg: dict) -> int:
    scheme_id = _need(cfg, "scheme", "sweep")
    if scheme_id not in _SWEEPABLE:
        raise UsageError(
            f"sweep supports {sorted(_SWEEPABLE)}; got {scheme_id!r}"
        )
    grid = cfg.get("grid") or {}
    if len(grid) != 1:
        raise UsageError("sweep requires exactly one --grid PARAM=MIN:MAX:STEP")
    (param, rng), = grid.items()
    if param not in _SWEEPABLE[scheme_id]:
        raise UsageError(
            f"scheme {scheme_id} sweeps over {_SWEEPABLE[scheme_id]}, not {param!r}"
        )
    values = _range_values(rng, param)
    if not values:
        raise UsageError(f"empty {param} grid")
    rows = []
    skipped = 0
    for v in values:
        point = dict(cfg)
        point["params"] = dict(cfg["params"])
        point["params"][param] = v
        try:
            scheme = _build_scheme(point)
        except DiscriminationError:
            skipped += 1
            continue
        rows.append((v, scheme))
    priors = _need_priors(cfg, 3, scheme_id)
    if cfg.get("format", "csv") == "json":
        payload = [
            {
                "param": param,
                "value": v,
                "priors": priors,
                "analytic_success": s.analytic_success,
                "brute_force_success": brute_force_success(s),
            }
            for v, s in rows
        ]
        _write_output(_json_text(payload), cfg.get("output"))
    else:
        lines = [f"{param},p0,p1,p2,analytic_success,brute_force_success"]
        for v, s in rows:
            cells = [serialize.format_float(v)]
            cells += [serialize.format_float(p) for p in priors]
            cells.append(serialize.format_float(s.analytic_success))
            cells.append(serialize.format_float(brute_force_success(s)))
            lines.append(",".join(cells))
        _write_output("\n".join(lines) + "\n", cfg.get("output"))
    print(f"points: {len(rows)}  skipped: {skipped}", file=sys.stderr)
    return 0


def _cmd_compare(cfg: dict) -> int:
    theorem = _need(cfg, "theorem", "compare")
    if theorem not in ("2.1", "3.1"):
        raise UsageError(f"--theorem must be 2.1 or 3.1, got {theorem!r}")
    grid = cfg.get("grid") or {}
    if "gamma" not in grid:
        raise UsageError("compare requires --gamma-grid MIN:MAX:STEP")
    gammas = _range_values(grid["gamma"], "gamma")
    prior_step = float(cfg.get("prior_step") or 0.05)
    p2_min = cfg.get("p2_min")
    if p2_min is None:
        p2_min = 1.0 / 3.0 if theorem == "2.1" else 0.0
    p2_min = float(p2_min)

    triples = simplex_grid(prior_step)
    if theorem == "3.1":
        # The comparison sorts priors anyway; deduplicate up to ordering.
        triples = sorted(set(tuple(sorted(p)) for p in triples))
    triples = [p for p in triples if p[2] >= p2_min - 1e-12]
    if not triples:
        raise UsageError(f"no prior triples with p2 >= {p2_min}")

    result = sweep(theorem, gammas, triples)
    if cfg.get("format", "csv") == "json":
        payload = [serialize.comparison_record_to_json(r) for r in result.records]
        _write_output(_json_text(payload), cfg.get("output"))
    else:
        _write_output(
            serialize.comparison_records_to_csv(result.records), cfg.get("output")
        )
    min_margin = (
        "n/a" if not result.records else serialize.format_float(result.min_margin)
    )
    print(
        f"points: {len(result.records)}  failures: {result.failures}  "
        f"min margin: {min_margin}  skipped: {len(result.skipped)}",
        file=sys.stderr,
    )
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "run": _cmd_run,
    "dump": _cmd_dump,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
}


def _command_from_config(argv: list[str]) -> list[str]:
    """Allow ``statedisc --config FILE``: pull the command from the file."""
    if not argv or argv[0] in _COMMANDS or argv[0] in ("-h", "--help"):
        return argv
    if argv[0] == "--config" and len(argv) >= 2:
        path = argv[1]
    elif argv[0].startswith("--config="):
        path = argv[0][len("--config=") :]
    else:
        return argv
    command = _load_config(path).get("command")
    if not command:
        raise UsageError("config file names no command and none was given")
    return [str(command)] + argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _command_from_config(argv)
        parser = _build_parser()
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command; see --help")
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DiscriminationError as exc:
        message = " ".join(str(exc).split())
        print(f"error: {exc.code}: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
