"""HTTP facade over the rating engine for the interactive editor UI.

Endpoints (JSON in and out, exact scalars as strings):

* ``POST /api/problems``: create a problem from problem JSON; extra field
  ``auto_reciprocal`` (default true) makes entry updates mirror the
  reciprocal cell.  Returns ``{"id", "revision"}``.
* ``PUT /api/problems/{id}/entry``: body ``{"i", "j", "value", "matrix"?}``;
  returns the new revision.
* ``PUT /api/problems/{id}/constraint``: body ``{"i", "j", "value"}``.
* ``POST /api/problems/{id}/solve``: run the applicable procedure; the
  result is tagged with the revision it was computed from.
* ``GET /api/problems/{id}``: full problem state plus the last result,
  marked stale when edits happened after it was computed.

Statuses: 400 malformed request, 404 unknown id, 422 for data the engine
cannot process; infeasible constraints include the violating cycle.
"""

from __future__ import annotations

import argparse
import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import DomainError, InfeasibleConstraintsError, UsageError
from .linalg import Matrix
from .rating import RatingProblem, solve_problem
from .semifield import Backend, Scalar, SemifieldTag, scalar_type
from .serialize import (
    coerce_entry,
    problem_from_json_obj,
    result_to_json_obj,
)

__all__ = ["create_app", "main"]


@dataclass
class SessionProblem:
    """One editable problem with a monotone revision counter."""

    id: str
    scale: SemifieldTag
    backend: Backend
    labels: tuple[str, ...]
    auto_reciprocal: bool
    matrices: list[list[list[Scalar]]]
    constraints: list[list[Scalar]] | None
    revision: int = 0
    last_result: dict | None = None
    result_revision: int | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def stype(self) -> type[Scalar]:
        return scalar_type(self.scale, self.backend)

    @property
    def order(self) -> int:
        return len(self.matrices[0])

    def to_rating_problem(self) -> RatingProblem:
        stype = self.stype
        mats = tuple(Matrix(grid, stype) for grid in self.matrices)
        cons = Matrix(self.constraints, stype) if self.constraints is not None else None
        return RatingProblem(matrices=mats, constraints=cons, labels=self.labels)

    def state_json(self) -> dict:
        out = {
            "id": self.id,
            "scale": self.scale.value,
            "backend": self.backend.value,
            "labels": list(self.labels),
            "auto_reciprocal": self.auto_reciprocal,
            "revision": self.revision,
            "matrices": [
                [[str(e) for e in row] for row in grid] for grid in self.matrices
            ],
            "constraints": (
                [[str(e) for e in row] for row in self.constraints]
                if self.constraints is not None
                else None
            ),
            "last_result": None,
        }
        if self.last_result is not None:
            out["last_result"] = {
                **self.last_result,
                "revision": self.result_revision,
                "stale": self.result_revision != self.revision,
            }
        return out


class ProblemStore:
    def __init__(self, persist_dir: str | None = None):
        self._problems: dict[str, SessionProblem] = {}
        self._lock = threading.Lock()
        self._persist_dir = Path(persist_dir) if persist_dir else None
        if self._persist_dir is not None:
            self._persist_dir.mkdir(parents=True, exist_ok=True)
            for path in sorted(self._persist_dir.glob("*.json")):
                state = json.loads(path.read_text())
                problem = _session_from_state(state)
                self._problems[problem.id] = problem

    def add(self, problem: SessionProblem) -> None:
        with self._lock:
            self._problems[problem.id] = problem
        self.save(problem)

    def get(self, problem_id: str) -> SessionProblem | None:
        with self._lock:
            return self._problems.get(problem_id)

    def save(self, problem: SessionProblem) -> None:
        if self._persist_dir is None:
            return
        state = problem.state_json()
        state.pop("last_result", None)  # results are recomputable
        (self._persist_dir / f"{problem.id}.json").write_text(json.dumps(state))


def _session_from_state(state: dict) -> SessionProblem:
    scale = SemifieldTag(state["scale"])
    backend = Backend(state["backend"])
    stype = scalar_type(scale, backend)
    matrices = [
        [[stype.parse(v) for v in row] for row in grid] for grid in state["matrices"]
    ]
    constraints = (
        [[stype.parse(v) for v in row] for row in state["constraints"]]
        if state.get("constraints") is not None
        else None
    )
    return SessionProblem(
        id=state["id"],
        scale=scale,
        backend=backend,
        labels=tuple(state["labels"]),
        auto_reciprocal=state.get("auto_reciprocal", True),
        matrices=matrices,
        constraints=constraints,
        revision=state.get("revision", 0),
    )


def _require_index(body: dict, key: str, n: int) -> int:
    value = body.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < n:
        raise UsageError(f"'{key}' must be an integer in [0, {n})")
    return value


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except json.JSONDecodeError:
        raise UsageError("request body is not valid JSON") from None
    if not isinstance(body, dict):
        raise UsageError("request body must be a JSON object")
    return body


def create_app(persist_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="troprank service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = ProblemStore(persist_dir)
    app.state.store = store

    @app.exception_handler(UsageError)
    async def usage_error(_request: Request, exc: UsageError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(InfeasibleConstraintsError)
    async def infeasible(_request: Request, exc: InfeasibleConstraintsError):
        return JSONResponse(
            status_code=422,
            content={
                "detail": str(exc),
                "cycle": list(exc.cycle) if exc.cycle is not None else None,
                "cycle_value": str(exc.value) if exc.value is not None else None,
            },
        )

    @app.exception_handler(DomainError)
    async def domain_error(_request: Request, exc: DomainError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def malformed(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    class _NotFound(Exception):
        def __init__(self, problem_id: str):
            self.problem_id = problem_id

    @app.exception_handler(_NotFound)
    async def not_found(_request: Request, exc: _NotFound):
        return JSONResponse(
            status_code=404, content={"detail": f"unknown problem id {exc.problem_id!r}"}
        )

    def get_or_404(problem_id: str) -> SessionProblem:
        problem = store.get(problem_id)
        if problem is None:
            raise _NotFound(problem_id)
        return problem

    @app.post("/api/problems")
    async def create_problem(request: Request) -> dict:
        body = await _json_body(request)
        rating_problem = problem_from_json_obj(body)
        auto = body.get("auto_reciprocal", True)
        if not isinstance(auto, bool):
            raise UsageError("'auto_reciprocal' must be a boolean")
        session = SessionProblem(
            id=uuid.uuid4().hex[:12],
            scale=rating_problem.scale,
            backend=rating_problem.backend,
            labels=rating_problem.labels,
            auto_reciprocal=auto,
            matrices=[[list(row) for row in m.entries] for m in rating_problem.matrices],
            constraints=(
                [list(row) for row in rating_problem.constraints.entries]
                if rating_problem.constraints is not None
                else None
            ),
        )
        store.add(session)
        return {"id": session.id, "revision": session.revision}

    @app.put("/api/problems/{problem_id}/entry")
    async def put_entry(problem_id: str, request: Request) -> dict:
        body = await _json_body(request)
        problem = get_or_404(problem_id)
        with problem.lock:
            n = problem.order
            i = _require_index(body, "i", n)
            j = _require_index(body, "j", n)
            which = body.get("matrix", 0)
            if not isinstance(which, int) or not 0 <= which < len(problem.matrices):
                raise UsageError(
                    f"'matrix' must be an integer in [0, {len(problem.matrices)})"
                )
            if "value" not in body:
                raise UsageError("'value' is required")
            value = coerce_entry(body["value"], problem.stype)
            problem.matrices[which][i][j] = value
            if problem.auto_reciprocal and i != j:
                if value.is_zero:
                    raise UsageError(
                        "auto-reciprocal mode cannot mirror a zero entry; "
                        "send the mirrored cell explicitly or disable the mode"
                    )
                problem.matrices[which][j][i] = value.inv()
            problem.revision += 1
            store.save(problem)
            return {"revision": problem.revision}

    @app.put("/api/problems/{problem_id}/constraint")
    async def put_constraint(problem_id: str, request: Request) -> dict:
        body = await _json_body(request)
        problem = get_or_404(problem_id)
        with problem.lock:
            if len(problem.matrices) > 1:
                raise UsageError(
                    "score constraints combine with exactly one comparison matrix"
                )
            n = problem.order
            i = _require_index(body, "i", n)
            j = _require_index(body, "j", n)
            if "value" not in body:
                raise UsageError("'value' is required")
            value = coerce_entry(body["value"], problem.stype)
            if problem.constraints is None:
                zero = problem.stype.zero
                problem.constraints = [[zero] * n for _ in range(n)]
            problem.constraints[i][j] = value
            problem.revision += 1
            store.save(problem)
            return {"revision": problem.revision}

    @app.post("/api/problems/{problem_id}/solve")
    async def solve(problem_id: str) -> dict:
        problem = get_or_404(problem_id)
        with problem.lock:
            if (
                problem.last_result is not None
                and problem.result_revision == problem.revision
            ):
                return {
                    **problem.last_result,
                    "revision": problem.result_revision,
                    "stale": False,
                }
            result = solve_problem(problem.to_rating_problem())
            payload = result_to_json_obj(result)
            problem.last_result = payload
            problem.result_revision = problem.revision
            return {**payload, "revision": problem.revision, "stale": False}

    @app.get("/api/problems/{problem_id}")
    async def get_problem(problem_id: str) -> dict:
        problem = get_or_404(problem_id)
        with problem.lock:
            return problem.state_json()

    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="troprank-serve", description="HTTP facade over the rating engine"
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8765)
    parser.add_argument(
        "--persist", metavar="DIR", help="directory for JSON problem persistence"
    )
    args = parser.parse_args(argv)
    uvicorn.run(create_app(args.persist), host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
