"""Frames of discernment, propositions, mass functions and Dempster's rule.

Propositions are encoded as integer bitmasks over the frame: bit ``i`` is set
when the ``i``-th frame element is a member.  Every iteration over focal
elements runs in increasing mask order, which makes all derived reports
deterministic.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import (
    DuplicateFocalElement,
    EmptyEvidenceList,
    EmptyFocalElement,
    EvidenceError,
    FrameError,
    FrameMismatch,
    NegativeMass,
    SumOutOfTolerance,
    TotalConflict,
    UnknownElement,
)

MAX_FRAME_SIZE = 63
SUM_TOLERANCE = 1e-3
CONFLICT_TOLERANCE = 1e-12
PRUNE_BELOW = 1e-15


@dataclass(frozen=True)
class Frame:
    """Ordered, duplicate-free collection of hypothesis labels."""

    elements: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise FrameError("a frame needs at least one element")
        if len(elements) > MAX_FRAME_SIZE:
            raise FrameError(
                f"frame has {len(elements)} elements; at most {MAX_FRAME_SIZE} are supported"
            )
        for label in elements:
            if not isinstance(label, str) or not label:
                raise FrameError(f"frame labels must be non-empty strings, got {label!r}")
        if len(set(elements)) != len(elements):
            raise FrameError(f"frame labels must be distinct: {list(elements)}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def mask_of(self, labels: Iterable[str] | str) -> int:
        if isinstance(labels, str):
            labels = (labels,)
        mask = 0
        for label in labels:
            try:
                mask |= 1 << self._index[label]
            except (KeyError, TypeError):
                raise UnknownElement(
                    f"{label!r} is not an element of the frame {list(self.elements)}"
                ) from None
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(label for i, label in enumerate(self.elements) if mask >> i & 1)

    def proposition(self, labels: Iterable[str] | str) -> "Proposition":
        """Build a proposition from labels; a bare string is one label."""
        return Proposition(self, self.mask_of(labels))

    def whole(self) -> "Proposition":
        return Proposition(self, self.full_mask)

    def singletons(self) -> list["Proposition"]:
        return [Proposition(self, 1 << i) for i in range(len(self.elements))]


@dataclass(frozen=True, order=False)
class Proposition:
    """A subset of a frame.  Equality is set equality within the same frame."""

    frame: Frame
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask > self.frame.full_mask:
            raise UnknownElement(f"mask {self.mask:#b} does not fit the frame")

    @property
    def members(self) -> tuple[str, ...]:
        return self.frame.labels_of(self.mask)

    def __len__(self):
        return bin(self.mask).count("1")

    def __bool__(self):
        return self.mask != 0

    def __and__(self, other: "Proposition") -> "Proposition":
        _check_same_frame(self.frame, other.frame)
        return Proposition(self.frame, self.mask & other.mask)

    def __or__(self, other: "Proposition") -> "Proposition":
        _check_same_frame(self.frame, other.frame)
        return Proposition(self.frame, self.mask | other.mask)

    def __lt__(self, other: "Proposition") -> bool:
        return self.mask < other.mask

    def issubset(self, other: "Proposition") -> bool:
        _check_same_frame(self.frame, other.frame)
        return self.mask & ~other.mask == 0

    def complement(self) -> "Proposition":
        return Proposition(self.frame, self.frame.full_mask & ~self.mask)

    def __str__(self):
        return "{" + ",".join(self.members) + "}"


PropositionLike = Union[Proposition, Iterable[str], str]


def _check_same_frame(a: Frame, b: Frame) -> None:
    if a != b:
        raise FrameMismatch(f"frames differ: {list(a.elements)} vs {list(b.elements)}")


def _to_mask(frame: Frame, prop: PropositionLike) -> int:
    if isinstance(prop, Proposition):
        _check_same_frame(frame, prop.frame)
        return prop.mask
    return frame.mask_of(prop)


@dataclass(frozen=True)
class MassFunction:
    """A basic belief assignment over a frame.

    Masses are kept exactly as supplied.  ``masses`` holds ``(mask, mass)``
    pairs sorted by mask; propositions not listed carry zero mass.  Use
    :func:`make_mass_function` to build validated instances.
    """

    frame: Frame
    masses: tuple[tuple[int, float], ...]

    @classmethod
    def _trusted(cls, frame: Frame, masses: Mapping[int, float]) -> "MassFunction":
        return cls(frame, tuple(sorted((a, float(v)) for a, v in masses.items() if v != 0.0)))

    def __getitem__(self, prop: PropositionLike) -> float:
        mask = _to_mask(self.frame, prop)
        for a, v in self.masses:
            if a == mask:
                return v
        return 0.0

    def __len__(self):
        return len(self.masses)

    def focal(self) -> list[Proposition]:
        return [Proposition(self.frame, a) for a, _ in self.masses]

    def items(self) -> list[tuple[Proposition, float]]:
        return [(Proposition(self.frame, a), v) for a, v in self.masses]

    def as_dict(self) -> dict[frozenset, float]:
        """Masses keyed by frozensets of labels."""
        return {frozenset(self.frame.labels_of(a)): v for a, v in self.masses}

    @property
    def total(self) -> float:
        return math.fsum(v for _, v in self.masses)

    def is_bayesian(self) -> bool:
        return all(a & (a - 1) == 0 for a, _ in self.masses)

    def __str__(self):
        body = ", ".join(
            f"{{{','.join(self.frame.labels_of(a))}}}: {v:.4f}" for a, v in self.masses
        )
        return f"m({body})"


def make_mass_function(
    frame: Frame,
    entries: Mapping | Iterable[tuple[PropositionLike, float]],
    *,
    tolerance: float = SUM_TOLERANCE,
    strict_normalize: bool = False,
) -> MassFunction:
    """Validate ``entries`` and build a mass function on ``frame``.

    ``entries`` is a mapping or an iterable of ``(proposition, mass)`` pairs
    where a proposition is a :class:`Proposition`, an iterable of labels, or a
    single label.  The masses must sum to one within ``tolerance``; they are
    stored unchanged unless ``strict_normalize`` is set, in which case they
    are rescaled to sum to exactly one.
    """
    if isinstance(entries, Mapping):
        entries = entries.items()
    masses: dict[int, float] = {}
    for prop, value in entries:
        mask = _to_mask(frame, prop)
        if mask == 0:
            raise EmptyFocalElement("the empty set cannot carry mass")
        value = float(value)
        if not math.isfinite(value):
            raise EvidenceError(f"mass of {set(frame.labels_of(mask))} is not finite")
        if value < 0.0:
            raise NegativeMass(f"mass of {set(frame.labels_of(mask))} is negative: {value}")
        if mask in masses:
            raise DuplicateFocalElement(
                f"proposition {set(frame.labels_of(mask))} listed more than once"
            )
        masses[mask] = value
    total = math.fsum(masses.values())
    if abs(total - 1.0) > tolerance:
        raise SumOutOfTolerance(f"masses sum to {total!r}, expected 1 within {tolerance}")
    if strict_normalize:
        masses = {a: v / total for a, v in masses.items()}
    return MassFunction._trusted(frame, masses)


def vacuous(frame: Frame) -> MassFunction:
    """Total ignorance: all mass on the whole frame."""
    return MassFunction(frame, ((frame.full_mask, 1.0),))


def belief(m: MassFunction, a: PropositionLike) -> float:
    mask = _to_mask(m.frame, a)
    return math.fsum(v for b, v in m.masses if b & ~mask == 0)


def plausibility(m: MassFunction, a: PropositionLike) -> float:
    mask = _to_mask(m.frame, a)
    return math.fsum(v for b, v in m.masses if b & mask)


def conflict(m1: MassFunction, m2: MassFunction) -> float:
    """Conflict coefficient K: product mass falling on empty intersections."""
    _check_same_frame(m1.frame, m2.frame)
    return math.fsum(x * y for b, x in m1.masses for c, y in m2.masses if not b & c)


def dempster_combine(
    m1: MassFunction, m2: MassFunction, *, conflict_tolerance: float = CONFLICT_TOLERANCE
) -> MassFunction:
    """Orthogonal sum of two mass functions.

    Raises :class:`TotalConflict` when K >= 1 - ``conflict_tolerance``.
    The result is scaled by the total non-conflicting product mass, which is
    1 - K for normalized inputs, so it always sums to one.
    """
    _check_same_frame(m1.frame, m2.frame)
    # fsum over the per-proposition product lists keeps the rule exactly commutative
    products: dict[int, list[float]] = defaultdict(list)
    clashes: list[float] = []
    for b, x in m1.masses:
        for c, y in m2.masses:
            a = b & c
            if a:
                products[a].append(x * y)
            else:
                clashes.append(x * y)
    k = math.fsum(clashes)
    unnormalized = {a: math.fsum(vs) for a, vs in products.items()}
    norm = math.fsum(unnormalized.values())
    if k >= 1.0 - conflict_tolerance or norm <= conflict_tolerance:
        raise TotalConflict(f"conflict K = {k!r}; Dempster's rule requires K < 1")
    combined = {a: v / norm for a, v in unnormalized.items() if v / norm >= PRUNE_BELOW}
    return MassFunction._trusted(m1.frame, combined)


def combine_n(
    ms: Iterable[MassFunction], *, conflict_tolerance: float = CONFLICT_TOLERANCE
) -> MassFunction:
    """Left fold of Dempster's rule over a non-empty sequence."""
    ms = list(ms)
    if not ms:
        raise EmptyEvidenceList("nothing to combine")
    result = ms[0]
    for step, m in enumerate(ms[1:], start=1):
        try:
            result = dempster_combine(result, m, conflict_tolerance=conflict_tolerance)
        except EvidenceError as exc:
            exc.step = step
            raise
    return result
