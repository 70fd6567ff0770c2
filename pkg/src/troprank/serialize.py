"""Text and JSON forms of matrices, problems, and rating results.

Two matrix file forms are accepted: CSV (one row per line, comma-separated
entries, fraction literals allowed) and a JSON object
``{"tag": "max-times"|"max-plus", "rows": n, "cols": m, "entries": [[...]]}``
with entries kept as strings so exact values survive the round trip.

Problem JSON:
``{"scale", "backend"?, "labels"?, "matrices": [...], "constraints": ...|null}``
where each matrix is either a 2D array of entries or the object form above.
Result JSON mirrors :class:`troprank.rating.RatingResult` with every exact
scalar rendered as a string ("1/6", "12^(1/2)").
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import UsageError
from .linalg import Matrix, Vector
from .rating import RatingProblem, RatingResult, ranking_groups
from .semifield import Backend, Scalar, SemifieldTag, scalar_type

__all__ = [
    "parse_scale",
    "coerce_entry",
    "matrix_from_csv",
    "matrix_to_csv",
    "matrix_from_json_obj",
    "matrix_to_json_obj",
    "parse_matrix_text",
    "problem_from_json_obj",
    "problem_to_json_obj",
    "result_to_json_obj",
]

_SCALE_ALIASES = {
    "max-times": SemifieldTag.MAX_TIMES,
    "max_times": SemifieldTag.MAX_TIMES,
    "mult": SemifieldTag.MAX_TIMES,
    "multiplicative": SemifieldTag.MAX_TIMES,
    "max-plus": SemifieldTag.MAX_PLUS,
    "max_plus": SemifieldTag.MAX_PLUS,
    "add": SemifieldTag.MAX_PLUS,
    "additive": SemifieldTag.MAX_PLUS,
}


def parse_scale(text: str) -> SemifieldTag:
    try:
        return _SCALE_ALIASES[text.strip().lower()]
    except KeyError:
        raise UsageError(
            f"unknown scale {text!r}; use one of {sorted(set(_SCALE_ALIASES))}"
        ) from None


def parse_backend(text: str) -> Backend:
    try:
        return Backend(text.strip().lower())
    except ValueError:
        raise UsageError(f"unknown backend {text!r}; use 'exact' or 'float'") from None


def coerce_entry(value: Any, stype: type[Scalar]) -> Scalar:
    """One matrix entry from JSON or CSV: string, int, or float.

    Floats fed to an exact backend are read through their decimal text so
    that 0.1 means 1/10, not the nearest binary double.
    """
    if isinstance(value, str):
        return stype.parse(value)
    if isinstance(value, bool):
        raise UsageError(f"matrix entries cannot be booleans, got {value!r}")
    if isinstance(value, float) and stype.backend is Backend.EXACT:
        return stype.of(Fraction(str(value)))
    if isinstance(value, (int, float)):
        return stype.of(value)
    raise UsageError(f"cannot read a matrix entry from {value!r}")


# ---------------------------------------------------------------------------
# matrices


def matrix_from_csv(text: str, stype: type[Scalar]) -> Matrix:
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cells = [c.strip() for c in line.split(",")]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise UsageError(
                f"line {lineno}: expected {width} entries, got {len(cells)}"
            )
        try:
            rows.append([coerce_entry(c, stype) for c in cells])
        except UsageError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    if not rows:
        raise UsageError("no matrix rows found")
    return Matrix(rows, stype)


def matrix_to_csv(A: Matrix) -> str:
    return "\n".join(",".join(str(e) for e in row) for row in A.entries) + "\n"


def matrix_from_json_obj(obj: Any, backend: Backend) -> Matrix:
    if not isinstance(obj, dict):
        raise UsageError("matrix JSON must be an object")
    try:
        tag = parse_scale(obj["tag"])
        entries = obj["entries"]
    except KeyError as exc:
        raise UsageError(f"matrix JSON is missing the {exc.args[0]!r} field") from None
    stype = scalar_type(tag, backend)
    m = _matrix_from_rows(entries, stype)
    declared = (obj.get("rows", m.rows), obj.get("cols", m.cols))
    if declared != (m.rows, m.cols):
        raise UsageError(
            f"matrix JSON declares shape {declared} but carries {m.rows}x{m.cols} entries"
        )
    return m


def matrix_to_json_obj(A: Matrix) -> dict:
    return {
        "tag": A.stype.tag.value,
        "rows": A.rows,
        "cols": A.cols,
        "entries": [[str(e) for e in row] for row in A.entries],
    }


def _matrix_from_rows(rows: Any, stype: type[Scalar]) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise UsageError("matrix entries must be a non-empty list of rows")
    return Matrix([[coerce_entry(v, stype) for v in row] for row in rows], stype)


def parse_matrix_text(text: str, stype: type[Scalar]) -> Matrix:
    """Read a matrix from file content, auto-detecting JSON versus CSV."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON: {exc}") from None
        m = matrix_from_json_obj(obj, stype.backend)
        if m.stype.tag is not stype.tag:
            raise UsageError(
                f"matrix is tagged {m.stype.tag.value}, expected {stype.tag.value}"
            )
        return m
    return matrix_from_csv(text, stype)


# ---------------------------------------------------------------------------
# problems


def problem_from_json_obj(obj: Any, default_backend: Backend = Backend.EXACT) -> RatingProblem:
    if not isinstance(obj, dict):
        raise UsageError("problem JSON must be an object")
    if "matrices" not in obj:
        raise UsageError("problem JSON is missing the 'matrices' field")
    scale = parse_scale(obj.get("scale", "max-times"))
    backend = (
        parse_backend(obj["backend"]) if "backend" in obj else default_backend
    )
    stype = scalar_type(scale, backend)

    def one_matrix(entry: Any) -> Matrix:
        if isinstance(entry, dict):
            m = matrix_from_json_obj(entry, backend)
            if m.stype.tag is not scale:
                raise UsageError("matrix tag disagrees with the problem scale")
            return m
        return _matrix_from_rows(entry, stype)

    matrices = obj["matrices"]
    if not isinstance(matrices, list) or not matrices:
        raise UsageError("'matrices' must be a non-empty list")
    mats = tuple(one_matrix(m) for m in matrices)
    constraints = obj.get("constraints")
    cons = one_matrix(constraints) if constraints is not None else None
    labels = obj.get("labels") or ()
    if labels and (
        not isinstance(labels, list) or not all(isinstance(x, str) for x in labels)
    ):
        raise UsageError("'labels' must be a list of strings")
    return RatingProblem(matrices=mats, constraints=cons, labels=tuple(labels))


def problem_to_json_obj(problem: RatingProblem) -> dict:
    return {
        "scale": problem.scale.value,
        "backend": problem.backend.value,
        "labels": list(problem.labels),
        "matrices": [[[str(e) for e in row] for row in m.entries] for m in problem.matrices],
        "constraints": (
            [[str(e) for e in row] for row in problem.constraints.entries]
            if problem.constraints is not None
            else None
        ),
    }


# ---------------------------------------------------------------------------
# results


def _vector_strings(v: Vector) -> list[str]:
    return [str(e) for e in v.entries]


def result_to_json_obj(result: RatingResult) -> dict:
    labels = result.labels
    stype = result.solution_space.generator.stype
    candidates = []
    for cand, norm in zip(result.candidates, result.normalized):
        candidates.append(
            {
                "scores": _vector_strings(cand.vector),
                "columns": list(cand.columns),
                "is_uniform": cand.is_uniform,
                "normalized": {
                    "max_to_one": _vector_strings(norm.max_to_one),
                    "sum_to_one": (
                        _vector_strings(norm.sum_to_one)
                        if norm.sum_to_one is not None
                        else None
                    ),
                },
                "ranking": [
                    [labels[i] for i in group] for group in ranking_groups(cand.vector)
                ],
            }
        )
    diag = result.diagnostics
    headline = next(
        (i for i, c in enumerate(result.candidates) if not c.is_uniform), 0
    )
    return {
        "scale": stype.tag.value,
        "backend": stype.backend.value,
        "labels": list(labels),
        "minimum": str(result.minimum),
        "candidates": candidates,
        "ranking": candidates[headline]["ranking"],
        "consistency": {
            "is_reciprocal": diag.is_reciprocal,
            "max_reciprocity_defect": str(diag.max_reciprocity_defect),
            "is_consistent": diag.is_consistent,
            "max_transitivity_defect": str(diag.max_transitivity_defect),
            "worst_triple": list(diag.worst_triple) if diag.worst_triple else None,
        },
        "solution_space": {
            "optimum": str(result.solution_space.optimum),
            "objective_kind": result.solution_space.objective_kind.value,
            "generator": matrix_to_json_obj(result.solution_space.generator),
        },
        "warnings": list(result.warnings),
    }
