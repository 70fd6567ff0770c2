"""Batch command line front end.

Reads one or more comparison matrices (CSV or JSON), optionally a
constraint matrix, runs the applicable rating procedure, and reports the
minimum, candidate score vectors, normalized weights, ranking with ties,
and consistency diagnostics.

Multiple inputs switch to simultaneous approximation; --constraints works
with exactly one input.  Exit codes: 0 success, 1 data leaves the problem
undefined (zero pairs, infeasible constraints), 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DomainError, TroprankError, UsageError
from .linalg import Matrix
from .rating import (
    NormalizeMode,
    RatingProblem,
    RatingResult,
    ranking_groups,
    solve_problem,
)
from .semifield import Backend, SemifieldTag, scalar_type
from .serialize import (
    parse_backend,
    parse_matrix_text,
    parse_scale,
    result_to_json_obj,
)

__all__ = ["RunConfig", "run", "main"]


@dataclass
class RunConfig:
    inputs: list[str]
    scale: SemifieldTag = SemifieldTag.MAX_TIMES
    backend: Backend = Backend.EXACT
    constraints_path: str | None = None
    normalize_mode: str = "none"  # none | sum | max
    output_format: str = "text"  # text | json | csv
    labels: tuple[str, ...] = field(default=())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="troprank",
        description=(
            "Rate alternatives from pairwise comparison matrices by tropical "
            "rank-1 approximation."
        ),
    )
    p.add_argument(
        "inputs",
        nargs="+",
        metavar="MATRIX",
        help="comparison matrix file(s), CSV or JSON; several files are approximated simultaneously",
    )
    p.add_argument("--scale", choices=("mult", "add"), default="mult",
                   help="comparison scale: multiplicative ratios or additive differences")
    p.add_argument("--backend", choices=("exact", "float"), default="exact",
                   help="exact big-integer arithmetic or double floats")
    p.add_argument("--constraints", metavar="FILE",
                   help="score constraint matrix (entry c_ij bounds score_i >= c_ij * score_j)")
    p.add_argument("--normalize", choices=("sum", "max", "none"), default="none",
                   help="additionally report sum-to-one weights or max-to-one scores")
    p.add_argument("--format", dest="output_format", choices=("text", "json", "csv"),
                   default="text", help="report format")
    p.add_argument("--labels", help="comma-separated alternative names")
    return p


def _read_matrix(path: str, stype) -> Matrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return parse_matrix_text(text, stype)
    except UsageError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_problem(config: RunConfig) -> RatingProblem:
    stype = scalar_type(config.scale, config.backend)
    matrices = tuple(_read_matrix(path, stype) for path in config.inputs)
    constraints = None
    if config.constraints_path is not None:
        if len(matrices) != 1:
            raise UsageError(
                "--constraints works with exactly one input matrix; constrained "
                "simultaneous approximation is undefined"
            )
        constraints = _read_matrix(config.constraints_path, stype)
    return RatingProblem(matrices=matrices, constraints=constraints, labels=config.labels)


def _format_scores(labels, vector) -> str:
    return "  ".join(f"{lab}={val}" for lab, val in zip(labels, vector.entries))


def _format_ranking(labels, vector) -> str:
    groups = ranking_groups(vector)
    return " > ".join(" = ".join(labels[i] for i in group) for group in groups)


def _text_report(result: RatingResult, config: RunConfig) -> str:
    labels = result.labels
    lines = [f"minimum: {result.minimum}"]
    headline = next((c for c in result.candidates if not c.is_uniform), result.candidates[0])
    lines.append(f"ranking: {_format_ranking(labels, headline.vector)}")
    for idx, (cand, norm) in enumerate(zip(result.candidates, result.normalized), start=1):
        cols = ",".join(str(c + 1) for c in cand.columns)
        suffix = "  [uniform: ranks all alternatives equal]" if cand.is_uniform else ""
        lines.append(f"candidate {idx} (generator columns {cols}){suffix}:")
        lines.append(f"  scores: {_format_scores(labels, cand.vector)}")
        if config.normalize_mode == "sum":
            if norm.sum_to_one is None:
                raise DomainError(
                    "sum-to-one weights are unavailable for this candidate "
                    "(irrational scores or additive scale); use --normalize max"
                )
            lines.append(f"  weights: {_format_scores(labels, norm.sum_to_one)}")
        elif config.normalize_mode == "max":
            lines.append(f"  top-one scores: {_format_scores(labels, norm.max_to_one)}")
    diag = result.diagnostics
    worst = (
        "(" + ",".join(labels[i] for i in diag.worst_triple) + ")"
        if diag.worst_triple
        else "-"
    )
    lines.append(
        "consistency: "
        f"reciprocal={'yes' if diag.is_reciprocal else 'no'} "
        f"consistent={'yes' if diag.is_consistent else 'no'} "
        f"reciprocity-defect={diag.max_reciprocity_defect} "
        f"transitivity-defect={diag.max_transitivity_defect} "
        f"worst-triple={worst}"
    )
    for w in result.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def _csv_report(result: RatingResult, config: RunConfig) -> str:
    labels = result.labels
    lines = ["candidate,kind," + ",".join(labels)]
    for idx, (cand, norm) in enumerate(zip(result.candidates, result.normalized), start=1):
        lines.append(f"{idx},scores," + ",".join(str(e) for e in cand.vector.entries))
        if config.normalize_mode == "sum" and norm.sum_to_one is not None:
            lines.append(
                f"{idx},weights," + ",".join(str(e) for e in norm.sum_to_one.entries)
            )
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one batch run; returns (exit code, report text)."""
    problem = _load_problem(config)
    result = solve_problem(problem)
    if config.output_format == "json":
        return 0, json.dumps(result_to_json_obj(result), indent=2) + "\n"
    if config.output_format == "csv":
        return 0, _csv_report(result, config)
    return 0, _text_report(result, config)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        inputs=args.inputs,
        scale=parse_scale(args.scale),
        backend=parse_backend(args.backend),
        constraints_path=args.constraints,
        normalize_mode=args.normalize,
        output_format=args.output_format,
        labels=tuple(args.labels.split(",")) if args.labels else (),
    )
    try:
        code, report = run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TroprankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
