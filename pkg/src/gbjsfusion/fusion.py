"""Divergence-weighted evidence fusion.

The pipeline runs in three stages:

1. reliability weights, from sufficiency x importance or uniform when those
   are not supplied, normalized to sum to one;
2. support degrees: for each evidence, the GBJS divergence of all the *other*
   evidences under the leave-one-out renormalized reliability weights.  An
   outlier's removal leaves a coherent group behind, so its support is small;
3. the normalized supports weight a convex average of the evidences, and that
   weighted average evidence is combined with itself ``k - 1`` times by
   Dempster's rule.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .divergence import gbjs_divergence
from .errors import (
    AllZeroSupport,
    DegenerateExclusion,
    EmptyEvidenceList,
    EvidenceError,
    FrameMismatch,
    IndexOutOfRange,
    LengthMismatch,
    MixedReliabilityInfo,
    NonpositiveReliability,
    TooFewEvidences,
    ZeroWeightSum,
)
from .evidence import CONFLICT_TOLERANCE, MassFunction, Proposition, dempster_combine

ZERO_SUPPORT = 1e-12


@dataclass(frozen=True)
class EvidenceSource:
    mass: MassFunction
    sufficiency: Optional[float] = None
    importance: Optional[float] = None
    label: str = ""

    def __post_init__(self):
        if (self.sufficiency is None) != (self.importance is None):
            raise MixedReliabilityInfo(
                f"source {self.label!r}: give both sufficiency and importance or neither"
            )

    @property
    def has_reliability(self) -> bool:
        return self.sufficiency is not None


@dataclass(frozen=True)
class FusionReport:
    """Every intermediate product of :func:`fuse`."""

    labels: tuple[str, ...]
    reliability_weights: tuple[float, ...]
    normalized_weights: tuple[float, ...]
    support_degrees: tuple[float, ...]
    final_weights: tuple[float, ...]
    wae: MassFunction
    per_step: tuple[MassFunction, ...]
    uniform_fallback: bool = False
    sources: tuple[MassFunction, ...] = field(default=(), compare=False)

    @property
    def final(self) -> MassFunction:
        return self.per_step[-1]

    @property
    def diagnosis(self) -> Proposition:
        return diagnose(self.final)


@contextlib.contextmanager
def _stage(name: str):
    try:
        yield
    except EvidenceError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def reliability_weights(sources: Sequence[EvidenceSource]) -> tuple[float, ...]:
    """Raw reliability weight per source: sufficiency x importance, else 1/k."""
    k = len(sources)
    if k == 0:
        raise EmptyEvidenceList("no evidence sources")
    given = [s.has_reliability for s in sources]
    if not any(given):
        return tuple(1.0 / k for _ in sources)
    if not all(given):
        raise MixedReliabilityInfo(
            "sufficiency/importance must be given for all sources or for none"
        )
    weights = []
    for s in sources:
        w = float(s.sufficiency) * float(s.importance)
        if not (math.isfinite(w) and w > 0.0):
            raise NonpositiveReliability(
                f"source {s.label!r} has reliability {s.sufficiency} x {s.importance}"
            )
        weights.append(w)
    return tuple(weights)


def normalize_weights(w: Sequence[float]) -> tuple[float, ...]:
    total = math.fsum(w)
    if not total > 0.0:
        raise ZeroWeightSum(f"weights sum to {total}")
    return tuple(x / total for x in w)


def leave_one_out_weights(w: Sequence[float], j: int) -> tuple[float, ...]:
    """Renormalize ``w`` over every index except ``j`` (0-based)."""
    if not 0 <= j < len(w):
        raise IndexOutOfRange(f"index {j} outside 0..{len(w) - 1}")
    if len(w) < 2:
        raise DegenerateExclusion("cannot exclude the only weight")
    rest = [x for i, x in enumerate(w) if i != j]
    total = math.fsum(rest)
    if not total > 0.0:
        raise DegenerateExclusion(f"weights remaining after excluding {j} sum to zero")
    return tuple(x / total for x in rest)


def support_degrees(
    sources: Sequence[EvidenceSource], w: Sequence[float]
) -> tuple[float, ...]:
    """Leave-one-out GBJS divergence for every source."""
    k = len(sources)
    if k < 3:
        raise TooFewEvidences(
            f"support degrees need at least 3 evidences, got {k}; "
            "with two, every leave-one-out divergence is zero"
        )
    if len(w) != k:
        raise LengthMismatch(f"{k} sources but {len(w)} weights")
    masses = [s.mass for s in sources]
    return tuple(
        gbjs_divergence(masses[:j] + masses[j + 1:], leave_one_out_weights(w, j))
        for j in range(k)
    )


def final_weights(sup: Sequence[float]) -> tuple[float, ...]:
    """Normalize support degrees into final weights.

    Tiny negative supports, an artefact of the zero substitution in the
    divergence, are clipped to zero.
    """
    clipped = [max(0.0, float(s)) for s in sup]
    if not clipped or max(clipped) <= ZERO_SUPPORT:
        raise AllZeroSupport("all support degrees vanish; the evidences agree completely")
    return normalize_weights(clipped)


def weighted_average_evidence(
    sources: Sequence[EvidenceSource], fw: Sequence[float]
) -> MassFunction:
    """Convex combination of the sources' masses under ``fw``."""
    if len(sources) == 0:
        raise EmptyEvidenceList("no evidence sources")
    if len(fw) != len(sources):
        raise LengthMismatch(f"{len(sources)} sources but {len(fw)} weights")
    frame = sources[0].mass.frame
    terms: dict[int, list[float]] = {}
    for s, weight in zip(sources, fw):
        if s.mass.frame != frame:
            raise FrameMismatch("all sources must share one frame")
        for a, v in s.mass.masses:
            terms.setdefault(a, []).append(weight * v)
    return MassFunction._trusted(frame, {a: math.fsum(vs) for a, vs in terms.items()})


def diagnose(m: MassFunction) -> Proposition:
    """Singleton with the largest mass; ties go to the earlier frame element."""
    return max(m.frame.singletons(), key=lambda p: (m[p], -p.mask))


def fuse(
    sources: Sequence[EvidenceSource], *, conflict_tolerance: float = CONFLICT_TOLERANCE
) -> FusionReport:
    """Run the full pipeline and return every intermediate result.

    Errors raised by a stage carry its name in ``exc.stage``.
    """
    sources = list(sources)
    k = len(sources)
    with _stage("input"):
        if k < 3:
            raise TooFewEvidences(f"fusion needs at least 3 evidences, got {k}")
        frame = sources[0].mass.frame
        if any(s.mass.frame != frame for s in sources):
            raise FrameMismatch("all sources must share one frame")
    with _stage("reliability"):
        raw = reliability_weights(sources)
        normalized = normalize_weights(raw)
    with _stage("support"):
        sup = support_degrees(sources, normalized)
    fallback = False
    with _stage("final-weights"):
        try:
            fw = final_weights(sup)
        except AllZeroSupport:
            fw = tuple(1.0 / k for _ in sources)
            fallback = True
    with _stage("weighted-average"):
        wae = weighted_average_evidence(sources, fw)
    steps = []
    current = wae
    with _stage("combination"):
        for step in range(1, k):
            try:
                current = dempster_combine(current, wae, conflict_tolerance=conflict_tolerance)
            except EvidenceError as exc:
                exc.step = step
                raise
            steps.append(current)
    return FusionReport(
        labels=tuple(s.label for s in sources),
        reliability_weights=raw,
        normalized_weights=normalized,
        support_degrees=sup,
        final_weights=fw,
        wae=wae,
        per_step=tuple(steps),
        uniform_fallback=fallback,
        sources=tuple(s.mass for s in sources),
    )
