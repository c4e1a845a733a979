"""Command-line interface: certificate reports over problem documents.

Reports are deterministic: identical (document, seed, tolerances) produce
byte-identical JSON.  The JSON report goes to stdout and a short
human-readable summary to stderr; exit status is 0 when every requested
verdict passes, 1 on a failed verdict, 2 on usage or document errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import os
import sys
import zlib

import numpy as np

from . import __version__
from .core import Subspace
from .duality import (
    dual_bounds_check,
    fusion_dual_bounds_check,
    fundamental_identity_sides,
    is_j_frame,
    vframe_optimal_bounds,
)
from .errors import (
    KreinFramesError,
    MemberClassificationError,
    NotAFrameError,
    NotSurjectiveError,
    HypothesisNotMetError,
    SchemaError,
    UsageError,
    ValidationError,
)
from .fusion import bounds_sandwich_ok, certify, converse_check
from .problem import ProblemSpec, parse_spec
from .sampling import random_complex, rng_from_seed
from .transforms import (
    is_j_isometry_multiple,
    necessary_conditions_check,
    preservation_report,
    transform_family,
)

COMMANDS = (
    "classify",
    "certify",
    "bounds",
    "dual",
    "identity",
    "transform",
    "preserve",
    "all",
)

SEED_ENV_VAR = "KREIN_FRAMES_SEED"


def _jsonable(obj):
    """Report payloads to JSON-safe structures; complex becomes [re, im]."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj if np.isfinite(obj) else repr(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return _jsonable(float(obj))
    if isinstance(obj, np.complexfloating):
        return _jsonable(complex(obj))
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Subspace):
        return {"dim": obj.dim, "ortho_basis": _jsonable(obj.ortho_basis)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return repr(obj)


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    return v / n if n > 0 else v


def _sorted_items(d):
    return sorted(d.items(), key=lambda kv: kv[0])


def _task_classify(problem: ProblemSpec, seed, samples):
    out = {"families": {}, "vector_frames": {}}
    for name, fam in _sorted_items(problem.families):
        members = []
        for w, v in fam.members():
            cls = w.classify()
            members.append(
                {
                    "dim": w.dim,
                    "weight": v,
                    "kind": cls.kind,
                    "regular": cls.regular,
                    "maximal_definite": cls.maximal_definite,
                    "extremal_gram_eigen": list(cls.extremal_gram_eigen),
                }
            )
        out["families"][name] = {"members": members, "signs": fam.signs}
    for name, vf in _sorted_items(problem.vector_frames):
        out["vector_frames"][name] = {"signs": vf.signs, "count": len(vf)}
    return out, True


def _task_certify(problem: ProblemSpec, seed, samples):
    out = {}
    ok = True
    for name, fam in _sorted_items(problem.families):
        cert = certify(fam)
        entry = _jsonable(cert)
        for w in entry["witnesses"]:
            if "vector" in w:
                w["vector"] = _jsonable(_unit(np.asarray(w["vector"])))
        try:
            entry["converse"] = _jsonable(converse_check(fam))
        except NotSurjectiveError as exc:
            entry["converse"] = {"error": str(exc)}
        out[name] = entry
        ok = ok and cert.is_frame
    for name, vf in _sorted_items(problem.vector_frames):
        verdict = is_j_frame(vf)
        out.setdefault("vector_frames", {})[name] = {"is_frame": verdict}
        ok = ok and verdict
    return {"families": {k: v for k, v in out.items() if k != "vector_frames"},
            "vector_frames": out.get("vector_frames", {})}, ok


def _task_bounds(problem: ProblemSpec, seed, samples):
    out = {"families": {}, "vector_frames": {}}
    ok = True
    for name, fam in _sorted_items(problem.families):
        cert = certify(fam)
        if not cert.is_frame:
            out["families"][name] = {"error": "not a J-fusion frame"}
            ok = False
            continue
        sandwich = bounds_sandwich_ok(
            cert.optimal_bounds, cert.estimate_bounds, fam.space.tol.tau_num
        )
        out["families"][name] = {
            "optimal": _jsonable(cert.optimal_bounds),
            "estimate": _jsonable(cert.estimate_bounds),
            "sandwich_ok": sandwich,
        }
        ok = ok and sandwich
    for name, vf in _sorted_items(problem.vector_frames):
        if not is_j_frame(vf):
            out["vector_frames"][name] = {"error": "not a J-frame"}
            ok = False
            continue
        out["vector_frames"][name] = {"optimal": _jsonable(vframe_optimal_bounds(vf))}
    return out, ok


def _task_dual(problem: ProblemSpec, seed, samples):
    out = {"vector_frames": {}, "families": {}}
    ok = True
    for name, vf in _sorted_items(problem.vector_frames):
        if not is_j_frame(vf):
            out["vector_frames"][name] = {"error": "not a J-frame"}
            ok = False
            continue
        report = dual_bounds_check(vf)
        out["vector_frames"][name] = _jsonable(report)
        ok = ok and report.ok
    for name, fam in _sorted_items(problem.families):
        try:
            report = fusion_dual_bounds_check(fam)
        except (NotAFrameError, KreinFramesError) as exc:
            out["families"][name] = {"advisory": True, "error": str(exc)}
            continue
        entry = _jsonable(report)
        # the fusion-level reciprocal relation is recorded per instance and
        # does not gate the exit status
        entry["advisory"] = True
        out["families"][name] = entry
    return out, ok


def _task_identity(problem: ProblemSpec, seed, samples):
    out = {}
    ok = True
    for idx, (name, vf) in enumerate(_sorted_items(problem.vector_frames)):
        if not is_j_frame(vf):
            out[name] = {"error": "not a J-frame"}
            ok = False
            continue
        rng = rng_from_seed([seed, zlib.crc32(name.encode()), idx])
        trials = max(1, samples)
        worst = 0.0
        frame_ok = True
        for _ in range(trials):
            subset = [i for i in range(len(vf)) if rng.uniform() < 0.5]
            f = random_complex(rng, vf.space.dim)
            lhs, rhs = fundamental_identity_sides(vf, subset, f)
            scale = 1.0 + max(abs(lhs), abs(rhs))
            rel = abs(lhs - rhs) / scale
            worst = max(worst, rel)
            frame_ok = frame_ok and rel < vf.space.tol.tau_num
        out[name] = {"trials": trials, "max_relative_residual": worst, "ok": frame_ok}
        ok = ok and frame_ok
    return {"vector_frames": out}, ok


def _task_transform(problem: ProblemSpec, seed, samples):
    out = {}
    ok = True
    for op_name, op in _sorted_items(problem.operators):
        scalar, c = is_j_isometry_multiple(op)
        entry = {"j_isometry_multiple": scalar, "isometry_scale": c, "families": {}}
        for fam_name, fam in _sorted_items(problem.families):
            try:
                _, cert = transform_family(op, fam)
            except MemberClassificationError as exc:
                i = exc.index
                witness = _unit(op.matrix @ fam.subspaces[i].basis[:, 0])
                entry["families"][fam_name] = {
                    "is_frame": False,
                    "error": str(exc),
                    "witness": _jsonable(witness),
                }
                ok = False
                continue
            except NotSurjectiveError as exc:
                entry["families"][fam_name] = {"is_frame": False, "error": str(exc)}
                ok = False
                continue
            fam_entry = {"certificate": _jsonable(cert)}
            if cert.is_frame and certify(fam).is_frame:
                try:
                    fam_entry["necessary_conditions"] = _jsonable(
                        necessary_conditions_check(op, fam)
                    )
                except HypothesisNotMetError as exc:
                    fam_entry["necessary_conditions"] = {"error": str(exc)}
            entry["families"][fam_name] = fam_entry
            ok = ok and cert.is_frame
        out[op_name] = entry
    return {"operators": out}, ok


def _task_preserve(problem: ProblemSpec, seed, samples):
    out = {}
    ok = True
    supplied = [w for fam in problem.families.values() for w in fam.subspaces]
    for op_name, op in _sorted_items(problem.operators):
        report = preservation_report(op, supplied, n_random=samples, seed=seed)
        entry = {}
        for field in ("definiteness_with_sign", "maximality", "regularity"):
            verdict = getattr(report, field)
            v_entry = {
                "status": verdict.status,
                "samples_tested": verdict.samples_tested,
                "note": verdict.note,
            }
            if verdict.counterexample is not None:
                v = verdict.counterexample
                v_entry["counterexample"] = {
                    "subspace": _jsonable(v),
                    "detail": verdict.detail,
                    "image_witness": _jsonable(_unit(op.matrix @ v.basis[:, 0])),
                }
            entry[field] = v_entry
            ok = ok and verdict.holds
        out[op_name] = entry
    return {"operators": out}, ok


_TASKS = {
    "classify": _task_classify,
    "certify": _task_certify,
    "bounds": _task_bounds,
    "dual": _task_dual,
    "identity": _task_identity,
    "transform": _task_transform,
    "preserve": _task_preserve,
}


def run_command(command: str, problem: ProblemSpec, seed: int, samples: int) -> dict:
    """Build the certificate report for one command (or 'all')."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}; choose from {COMMANDS}")
    names = list(_TASKS) if command == "all" else [command]
    if command == "all":
        if not problem.operators:
            names = [n for n in names if n not in ("transform", "preserve")]
        if not problem.vector_frames:
            names = [n for n in names if n != "identity"]
    results = {}
    passed = True
    for name in names:
        res, ok = _TASKS[name](problem, seed, samples)
        results[name] = {"results": _jsonable(res), "pass": ok}
        passed = passed and ok
    return {
        "tool": "kreinframes",
        "version": __version__,
        "command": command,
        "seed": seed,
        "samples": samples,
        "tolerances": _jsonable(problem.tolerances),
        "space": {"dim": problem.space.dim, "signature": list(problem.space.signature)},
        "results": results,
        "pass": passed,
    }


def _summary_lines(report: dict) -> list[str]:
    lines = [
        f"kreinframes {report['version']} | command={report['command']} "
        f"seed={report['seed']} dim={report['space']['dim']} "
        f"signature={tuple(report['space']['signature'])}"
    ]
    for name, block in report["results"].items():
        lines.append(f"  {name}: {'PASS' if block['pass'] else 'FAIL'}")
    lines.append(f"overall: {'PASS' if report['pass'] else 'FAIL'}")
    return lines


def _resolve_seed(args, problem: ProblemSpec) -> int:
    if args.seed is not None:
        return args.seed
    if problem.seed is not None:
        return problem.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kreinframes",
        description="Certify J-fusion frames over finite-dimensional Krein spaces.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--spec", required=True, help="path to a problem JSON document")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument(
        "--samples", type=int, default=200, help="samples for sampling-based checks"
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--tol-sym", type=float, default=None)
    parser.add_argument("--tol-rank", type=float, default=None)
    parser.add_argument("--tol-def", type=float, default=None)
    parser.add_argument("--tol-num", type=float, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        problem = parse_spec(args.spec)
        overrides = {
            "tau_sym": args.tol_sym,
            "tau_rank": args.tol_rank,
            "tau_def": args.tol_def,
            "tau_num": args.tol_num,
        }
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if overrides:
            merged = dataclasses.replace(problem.tolerances, **overrides)
            with open(args.spec) as fh:
                doc = json.load(fh)
            doc["tolerances"] = dataclasses.asdict(merged)
            problem = parse_spec(doc)
        seed = _resolve_seed(args, problem)
        report = run_command(args.command, problem, seed, args.samples)
    except (SchemaError, ValidationError, UsageError, MemberClassificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(_summary_lines(report))
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        sys.stderr.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
