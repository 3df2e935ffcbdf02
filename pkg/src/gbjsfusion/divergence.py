"""Shannon entropy, GJS divergence over distributions and GBJS over mass functions.

All logarithms are base 2, so a divergence among ``k`` inputs lies in
``[0, log2 k]``.  Zero coordinates (in an input or in the weighted mixture)
are replaced by ``EPSILON`` before any logarithm is taken; the inputs are not
renormalized afterwards.

For mass functions every focal proposition, singleton or compound, is one
coordinate.  The coordinate set of a call is the union of focal elements of
all mass functions involved.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import (
    EmptyEvidenceList,
    FrameMismatch,
    InvalidDistribution,
    LengthMismatch,
    UnnormalizedWeights,
)
from .evidence import MassFunction

EPSILON = 1e-12
WEIGHT_TOLERANCE = 1e-9
DISTRIBUTION_TOLERANCE = 1e-9


def _substitute_zeros(x: np.ndarray) -> np.ndarray:
    return np.where(x == 0.0, EPSILON, x)


def _entropy(x: np.ndarray) -> float:
    x = _substitute_zeros(np.asarray(x, dtype=float))
    return float(-np.sum(x * np.log2(x)))


def _as_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidDistribution("a distribution must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(p)) or np.any(p < 0.0):
        raise InvalidDistribution(f"distribution has negative or non-finite entries: {p}")
    if abs(p.sum() - 1.0) > DISTRIBUTION_TOLERANCE:
        raise InvalidDistribution(f"distribution sums to {p.sum()!r}, not 1")
    return p


def _as_weights(w, k: int) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size != k:
        raise LengthMismatch(f"expected {k} weights, got {w.size}")
    if not np.all(np.isfinite(w)) or np.any(w < 0.0):
        raise UnnormalizedWeights(f"weights must be finite and non-negative: {w}")
    if abs(w.sum() - 1.0) > WEIGHT_TOLERANCE:
        raise UnnormalizedWeights(f"weights sum to {w.sum()!r}; normalize them first")
    return w


def _entropy_form(rows: np.ndarray, w: np.ndarray) -> float:
    mixture = w @ rows
    return _entropy(mixture) - float(sum(wj * _entropy(row) for wj, row in zip(w, rows)))


def _expanded_form(rows: np.ndarray, w: np.ndarray) -> float:
    mixture = _substitute_zeros(w @ rows)
    rows = _substitute_zeros(rows)
    return float(sum(wj * np.sum(row * np.log2(row / mixture)) for wj, row in zip(w, rows)))


def shannon_entropy_dist(p: Sequence[float]) -> float:
    """Base-2 Shannon entropy of a probability vector."""
    return _entropy(_as_distribution(p))


def shannon_entropy_mass(m: MassFunction) -> float:
    """Base-2 Shannon entropy of a mass function, one term per focal element."""
    return _entropy(np.array([v for _, v in m.masses], dtype=float))


def _distribution_matrix(ps) -> np.ndarray:
    if len(ps) == 0:
        raise EmptyEvidenceList("no distributions given")
    rows = [_as_distribution(p) for p in ps]
    if len({r.size for r in rows}) != 1:
        raise LengthMismatch("distributions have different lengths")
    return np.vstack(rows)


def gjs_divergence(ps: Sequence[Sequence[float]], w: Sequence[float]) -> float:
    """Weighted Jensen-Shannon divergence of several distributions.

    Mixture entropy minus the weighted mean of the individual entropies.
    """
    rows = _distribution_matrix(ps)
    return _entropy_form(rows, _as_weights(w, len(rows)))


def gjs_divergence_expanded(ps: Sequence[Sequence[float]], w: Sequence[float]) -> float:
    """Same quantity as :func:`gjs_divergence`, as a weighted sum of log-ratios."""
    rows = _distribution_matrix(ps)
    return _expanded_form(rows, _as_weights(w, len(rows)))


def coordinate_matrix(ms: Sequence[MassFunction]) -> tuple[list[int], np.ndarray]:
    """Lay mass functions out as rows over the union of their focal masks.

    Returns the sorted masks and a ``(len(ms), len(masks))`` matrix.
    """
    if len(ms) == 0:
        raise EmptyEvidenceList("no mass functions given")
    frame = ms[0].frame
    for m in ms[1:]:
        if m.frame != frame:
            raise FrameMismatch("all mass functions must share one frame")
    masks = sorted({a for m in ms for a, _ in m.masses})
    column = {a: i for i, a in enumerate(masks)}
    rows = np.zeros((len(ms), len(masks)))
    for j, m in enumerate(ms):
        for a, v in m.masses:
            rows[j, column[a]] = v
    return masks, rows


def gbjs_divergence(ms: Sequence[MassFunction], w: Sequence[float]) -> float:
    """Generalised belief Jensen-Shannon divergence among weighted mass functions.

    ``w`` must be non-negative and sum to one; see
    :func:`gbjsfusion.fusion.normalize_weights`.
    """
    _, rows = coordinate_matrix(ms)
    return _entropy_form(rows, _as_weights(w, len(rows)))


def gbjs_divergence_expanded(ms: Sequence[MassFunction], w: Sequence[float]) -> float:
    _, rows = coordinate_matrix(ms)
    return _expanded_form(rows, _as_weights(w, len(rows)))


def gbjs_equal_weights(ms: Sequence[MassFunction]) -> float:
    if len(ms) == 0:
        raise EmptyEvidenceList("no mass functions given")
    return gbjs_divergence(ms, np.full(len(ms), 1.0 / len(ms)))
