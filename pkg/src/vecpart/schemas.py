"""Pydantic request/response models shared by the FastAPI service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

Strategy = Literal["arbitrary", "proper", "amalgamated"]
Algorithm = Literal["pf", "elementary"]


class ProblemSpec(BaseModel):
    """A vector partition problem: either a named root system or explicit vectors."""

    root_system: Optional[str] = None
    roots: Optional[list[list[int]]] = None
    strategy: Strategy = "proper"
    algorithm: Algorithm = "pf"
    seed: int = 7  # seeds the random points of the substitution check

    @field_validator("roots")
    @classmethod
    def roots_nonempty(cls, v):
        if v is not None:
            if not v:
                raise ValueError("roots must be non-empty")
            if len({len(r) for r in v}) != 1:
                raise ValueError("all vectors must have the same length")
        return v

    def resolved_delta(self) -> tuple:
        from .engine import root_system
        if (self.root_system is None) == (self.roots is None):
            raise ValueError("give exactly one of root_system or roots")
        if self.root_system is not None:
            return root_system(self.root_system)
        return tuple(tuple(int(x) for x in r) for r in self.roots)


class PolynomialTerm(BaseModel):
    exponents: list[int]
    coefficient: str  # exact rational "p/q"


class QuasiPolynomialPiece(BaseModel):
    shift: list[int]
    polynomial: list[PolynomialTerm]


class QuasiPolynomialModel(BaseModel):
    lattice_basis: list[list[str]]
    pieces: list[QuasiPolynomialPiece]


class ChamberModel(BaseModel):
    id: int
    walls: list[list[int]]
    vertices: list[list[int]]
    internal_point: list[int]
    neighbors: dict[str, list[int]] = Field(default_factory=dict)
    quasipolynomial: QuasiPolynomialModel


class FormulaResponse(BaseModel):
    delta: list[list[int]]
    strategy: Strategy
    algorithm: Algorithm
    chambers: list[ChamberModel]


class FormulaRequest(ProblemSpec):
    pass


class EvaluateRequest(ProblemSpec):
    point: list[int]


class EvaluateResponse(BaseModel):
    point: list[int]
    value: int


class VerifyRequest(ProblemSpec):
    box: int = 8


class VerifyResponse(BaseModel):
    checked: int
    matches: bool
    first_mismatch: Optional[dict] = None
