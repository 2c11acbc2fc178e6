"""JSON documents exchanged with the command line: families, certificates and enumerations."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Any

import orjson
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from hyperbisect.errors import DocumentError
from hyperbisect.geometry import Arrangement
from hyperbisect.measures import DiscreteMeasure, MeasureFamily, SideMasses
from hyperbisect.measures.discrete import BISECTION_REL_TOL

MASS_BALANCE_TOL = 1e-9


class MeasureRecord(BaseModel):
    points: list[list[float]] = Field(min_length=1)
    weights: list[float] | None = None

    @field_validator("weights")
    @classmethod
    def _positive_weights(cls, value: list[float] | None) -> list[float] | None:
        if value is not None and any(weight <= 0 for weight in value):
            raise ValueError("weights must be positive")
        return value

    @model_validator(mode="after")
    def _weights_match_points(self) -> MeasureRecord:
        if self.weights is not None and len(self.weights) != len(self.points):
            raise ValueError(f"{len(self.points)} points but {len(self.weights)} weights")
        return self


class FamilyDocument(BaseModel):
    dimension: int = Field(ge=1)
    measures: list[MeasureRecord] = Field(min_length=1)

    @model_validator(mode="after")
    def _points_have_dimension(self) -> FamilyDocument:
        for index, record in enumerate(self.measures):
            for point in record.points:
                if len(point) != self.dimension:
                    raise ValueError(
                        f"measure {index} has a point of length {len(point)}, "
                        f"expected {self.dimension}"
                    )
        return self

    def to_family(self) -> MeasureFamily:
        return MeasureFamily(
            tuple(DiscreteMeasure(record.points, record.weights) for record in self.measures)
        )

    @classmethod
    def from_family(cls, fam: MeasureFamily) -> FamilyDocument:
        return cls(
            dimension=fam.dim,
            measures=[
                MeasureRecord(points=measure.points.tolist(), weights=measure.weights.tolist())
                for measure in fam
            ],
        )


class MeasureMass(BaseModel):
    positive_mass: float = Field(ge=0)
    negative_mass: float = Field(ge=0)
    on_cut_mass: float = Field(ge=0)
    total: float = Field(gt=0)

    @model_validator(mode="after")
    def _masses_balance(self) -> MeasureMass:
        parts = self.positive_mass + self.negative_mass + self.on_cut_mass
        if abs(parts - self.total) > MASS_BALANCE_TOL * self.total:
            raise ValueError(f"side masses sum to {parts}, total is {self.total}")
        return self

    @property
    def bisected(self) -> bool:
        masses = SideMasses(
            self.positive_mass, self.negative_mass, self.on_cut_mass, self.total
        )
        return masses.bisected(BISECTION_REL_TOL)

    @classmethod
    def from_side_masses(cls, masses: SideMasses) -> MeasureMass:
        return cls(
            positive_mass=masses.positive,
            negative_mass=masses.negative,
            on_cut_mass=masses.on_cut,
            total=masses.total,
        )


class CertificateDocument(BaseModel):
    arrangement: list[list[float]]
    per_measure: list[MeasureMass]
    verified: bool
    mode: str
    seed: int
    status: str | None = None
    residual_max: float | None = None
    diagnostics: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _verified_matches_masses(self) -> CertificateDocument:
        bisected = all(mass.bisected for mass in self.per_measure)
        if self.verified != bisected:
            raise ValueError(f"verified={self.verified} disagrees with the recorded side masses")
        return self

    def to_arrangement(self) -> Arrangement:
        return Arrangement.from_matrix(self.arrangement)


class EnumerationDocument(BaseModel):
    dimension: int = Field(ge=1)
    hyperplanes: int = Field(ge=1)
    mode: str
    arrangements: list[list[list[float]]]

    @property
    def count(self) -> int:
        return len(self.arrangements)


def read_json(path: str | Path) -> Any:
    try:
        return orjson.loads(Path(path).read_bytes())
    except orjson.JSONDecodeError as exc:
        raise DocumentError(f"{path}: malformed JSON ({exc})") from exc


def _validated(model: type[BaseModel], payload: Any, path: str | Path) -> Any:
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        raise DocumentError(f"{path}: {exc.error_count()} validation error(s)\n{exc}") from exc


def load_family(path: str | Path) -> MeasureFamily:
    document: FamilyDocument = _validated(FamilyDocument, read_json(path), path)
    try:
        return document.to_family()
    except ValueError as exc:
        raise DocumentError(f"{path}: {exc}") from exc


def load_arrangement(path: str | Path) -> Arrangement:
    """Bare list of coefficient vectors, or any document carrying an ``arrangement`` key."""

    payload = read_json(path)
    if isinstance(payload, dict):
        if "arrangement" not in payload:
            raise DocumentError(f"{path}: no 'arrangement' key")
        payload = payload["arrangement"]
    if not isinstance(payload, list) or not payload:
        raise DocumentError(f"{path}: arrangement must be a non-empty list of coefficient vectors")
    try:
        return Arrangement.from_matrix(payload)
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"{path}: {exc}") from exc


def arrangement_payload(arr: Arrangement) -> list[list[float]]:
    return [list(plane.coeffs) for plane in arr]


def write_json(data: Any, path: str | Path) -> Path:
    """Atomic write: serialize to a sibling temp file, then replace the target."""

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    options = orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY
    payload = orjson.dumps(data, option=options, default=str)
    return _atomic_write(target, payload)


def _atomic_write(target: Path, payload: bytes) -> Path:
    handle, temp_name = tempfile.mkstemp(
        dir=target.parent, prefix=f".{target.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(handle, "wb") as stream:
            stream.write(payload)
        os.replace(temp_name, target)
    except BaseException:
        Path(temp_name).unlink(missing_ok=True)
        raise
    return target


def write_text(text: str, path: str | Path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    return _atomic_write(target, text.encode("utf-8"))
