"""Evidence documents (input) and fusion reports (output).

An evidence document is UTF-8 JSON following ``schema/evidence.schema.json``::

    {
      "version": 1,
      "frame": ["F1", "F2", "F3"],
      "sources": [
        {"label": "S1", "sufficiency": 0.9, "importance": 0.8,
         "assignments": [{"proposition": ["F2"], "mass": 0.8176},
                         {"proposition": ["F1", "F2"], "mass": 0.1844}]}
      ]
    }

Propositions are always lists of frame labels.  ``sufficiency`` and
``importance`` are optional but must appear together.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema

from .errors import (
    EvidenceError,
    EvidenceSyntaxError,
    MixedReliabilityInfo,
    SchemaError,
    ValidationError,
)
from .evidence import SUM_TOLERANCE, Frame, MassFunction, make_mass_function
from .fusion import EvidenceSource, FusionReport

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AssignmentEntry:
    proposition: tuple[str, ...]
    mass: float


@dataclass(frozen=True)
class SourceEntry:
    label: str
    assignments: tuple[AssignmentEntry, ...]
    sufficiency: Optional[float] = None
    importance: Optional[float] = None


@dataclass(frozen=True)
class EvidenceDocument:
    frame: tuple[str, ...]
    sources: tuple[SourceEntry, ...]
    version: int = SCHEMA_VERSION

    def evidence_sources(
        self, *, strict_normalize: bool = False, tolerance: float = SUM_TOLERANCE
    ) -> list[EvidenceSource]:
        """Build validated sources; domain errors surface as :class:`ValidationError`."""
        try:
            frame = Frame(self.frame)
        except EvidenceError as exc:
            raise ValidationError(f"frame: {exc}", exc) from exc
        out = []
        for i, src in enumerate(self.sources):
            try:
                m = make_mass_function(
                    frame,
                    [(a.proposition, a.mass) for a in src.assignments],
                    tolerance=tolerance,
                    strict_normalize=strict_normalize,
                )
                out.append(EvidenceSource(m, src.sufficiency, src.importance, src.label))
            except EvidenceError as exc:
                raise ValidationError(
                    f"sources/{i} ({src.label!r}): {type(exc).__name__}: {exc}", exc
                ) from exc
        return out

    def mass_functions(self, **kwargs) -> list[MassFunction]:
        return [s.mass for s in self.evidence_sources(**kwargs)]


@lru_cache(maxsize=None)
def evidence_schema() -> dict:
    text = resources.files(__package__).joinpath("schema/evidence.schema.json").read_text("utf-8")
    return json.loads(text)


def _json_path(error: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in error.absolute_path) or "<root>"


def parse_evidence(data: bytes | str, *, strict_normalize: bool = False) -> EvidenceDocument:
    """Parse and fully validate an evidence document."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EvidenceSyntaxError(f"input is not UTF-8: {exc}") from exc
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise EvidenceSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc

    validator = jsonschema.Draft202012Validator(evidence_schema())
    error = jsonschema.exceptions.best_match(validator.iter_errors(raw))
    if error is not None:
        raise SchemaError(f"{_json_path(error)}: {error.message}")

    sources = []
    for i, s in enumerate(raw["sources"]):
        if ("sufficiency" in s) != ("importance" in s):
            cause = MixedReliabilityInfo("sufficiency and importance must appear together")
            raise ValidationError(f"sources/{i}: {cause}", cause)
        sources.append(
            SourceEntry(
                label=s["label"],
                assignments=tuple(
                    AssignmentEntry(tuple(a["proposition"]), float(a["mass"]))
                    for a in s["assignments"]
                ),
                sufficiency=s.get("sufficiency"),
                importance=s.get("importance"),
            )
        )
    doc = EvidenceDocument(frame=tuple(raw["frame"]), sources=tuple(sources), version=raw["version"])
    doc.evidence_sources(strict_normalize=strict_normalize)
    return doc


def load_evidence(path: str | Path, **kwargs) -> EvidenceDocument:
    return parse_evidence(Path(path).read_bytes(), **kwargs)


def document_to_dict(doc: EvidenceDocument) -> dict:
    sources = []
    for s in doc.sources:
        entry = {"label": s.label}
        if s.sufficiency is not None:
            entry["sufficiency"] = s.sufficiency
            entry["importance"] = s.importance
        entry["assignments"] = [
            {"proposition": list(a.proposition), "mass": a.mass} for a in s.assignments
        ]
        sources.append(entry)
    return {"version": doc.version, "frame": list(doc.frame), "sources": sources}


def serialize_evidence(doc: EvidenceDocument) -> bytes:
    return (json.dumps(document_to_dict(doc), indent=2) + "\n").encode("utf-8")


def document_from_masses(
    frame: Frame, masses: list[MassFunction], labels: Optional[list[str]] = None
) -> EvidenceDocument:
    """Wrap in-memory mass functions as a document (no reliability info)."""
    labels = labels or [f"m{i}" for i in range(1, len(masses) + 1)]
    return EvidenceDocument(
        frame=frame.elements,
        sources=tuple(
            SourceEntry(
                label,
                tuple(AssignmentEntry(p.members, v) for p, v in m.items()),
            )
            for label, m in zip(labels, masses)
        ),
    )


# reports


def mass_to_list(m: MassFunction) -> list[dict]:
    return [{"proposition": list(p.members), "mass": v} for p, v in m.items()]


def mass_from_list(frame: Frame, entries: list[dict]) -> MassFunction:
    return MassFunction._trusted(
        frame, {frame.mask_of(e["proposition"]): float(e["mass"]) for e in entries}
    )


def report_to_dict(report: FusionReport) -> dict:
    """Machine-readable report at full precision."""
    frame = report.wae.frame
    return {
        "version": SCHEMA_VERSION,
        "frame": list(frame.elements),
        "labels": list(report.labels),
        "reliability_weights": list(report.reliability_weights),
        "normalized_weights": list(report.normalized_weights),
        "support_degrees": list(report.support_degrees),
        "final_weights": list(report.final_weights),
        "uniform_fallback": report.uniform_fallback,
        "wae": mass_to_list(report.wae),
        "per_step": [mass_to_list(m) for m in report.per_step],
        "final": mass_to_list(report.final),
        "diagnosis": list(report.diagnosis.members),
    }


def report_from_dict(data: dict) -> FusionReport:
    frame = Frame(data["frame"])
    return FusionReport(
        labels=tuple(data["labels"]),
        reliability_weights=tuple(data["reliability_weights"]),
        normalized_weights=tuple(data["normalized_weights"]),
        support_degrees=tuple(data["support_degrees"]),
        final_weights=tuple(data["final_weights"]),
        wae=mass_from_list(frame, data["wae"]),
        per_step=tuple(mass_from_list(frame, s) for s in data["per_step"]),
        uniform_fallback=bool(data["uniform_fallback"]),
    )


def report_to_json(report: FusionReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def fmt(x: float, precision: Optional[int]) -> str:
    """Fixed-point at ``precision`` decimals, or shortest round-trip repr for None."""
    return repr(float(x)) if precision is None else f"{x:.{precision}f}"


def render_mass(m: MassFunction, precision: Optional[int], indent: str = "  ") -> list[str]:
    width = max(len(str(p)) for p in m.focal())
    return [f"{indent}{str(p):<{width}}  {fmt(v, precision)}" for p, v in m.items()]


def render_report(report: FusionReport, precision: Optional[int] = 4) -> str:
    """Plain-text rendering of a fusion report."""
    frame = report.wae.frame
    lines = [f"frame: {', '.join(frame.elements)}", f"sources: {len(report.labels)}", ""]
    width = max(6, *(len(l) for l in report.labels))
    header = ["reliability", "normalized", "support", "final weight"]
    lines.append(f"{'source':<{width}}  " + "  ".join(f"{h:>12}" for h in header))
    for row in zip(
        report.labels,
        report.reliability_weights,
        report.normalized_weights,
        report.support_degrees,
        report.final_weights,
    ):
        label, *values = row
        lines.append(f"{label:<{width}}  " + "  ".join(f"{fmt(v, precision):>12}" for v in values))
    if report.uniform_fallback:
        lines.append("(all support degrees vanished: uniform final weights used)")
    lines += ["", "weighted average evidence:"] + render_mass(report.wae, precision)
    for i, m in enumerate(report.per_step, start=1):
        lines += ["", f"combination step {i}:"] + render_mass(m, precision)
    lines += ["", "final:"] + render_mass(report.final, precision)
    lines += ["", f"diagnosis: {','.join(report.diagnosis.members)}"]
    return "\n".join(lines) + "\n"
