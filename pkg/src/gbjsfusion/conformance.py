"""Self-contained conformance run: published values plus randomized invariants.

Each check compares a computed value against a published or derived one at a
fixed tolerance.  Randomized checks use a seeded generator so every run is
identical.  The brute-force Dempster and divergence oracles in this module
work on frozensets of labels and plain floats; they share no code with the
bitmask/numpy implementations they check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import reference as ref
from .divergence import (
    EPSILON,
    gbjs_divergence,
    gbjs_divergence_expanded,
    gbjs_equal_weights,
    gjs_divergence,
)
from .errors import TotalConflict
from .evidence import (
    Frame,
    MassFunction,
    belief,
    combine_n,
    conflict,
    dempster_combine,
    make_mass_function,
    plausibility,
    vacuous,
)
from .fusion import diagnose, fuse, leave_one_out_weights, support_degrees

SEED = 20180101
PROPERTY_CASES = 1000
ORACLE_PAIRS = 200
TABLE_TOL = 1e-3
EXAMPLE_TOL = 5e-4


@dataclass(frozen=True)
class Check:
    criterion: str
    name: str
    passed: bool
    computed: Optional[float] = None
    expected: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ""


def close(criterion, name, computed, expected, tol) -> Check:
    return Check(criterion, name, abs(computed - expected) <= tol, computed, expected, tol)


def _key(labels) -> str:
    return "{" + ",".join(labels) + "}"


# published values


def divergence_examples() -> list[Check]:
    checks = []
    ms = ref.mass_functions(ref.ABC, ref.EXAMPLE_IDENTICAL)
    checks.append(close("C1", "identical BBAs, equal weights", gbjs_equal_weights(ms), 0.0, 1e-9))

    ms = ref.mass_functions(ref.ABC, ref.EXAMPLE_WEIGHTED)
    w = ref.EXAMPLE_WEIGHTED_WEIGHTS
    checks.append(
        close("C2", "weighted GBJS", gbjs_divergence(ms, w), ref.EXAMPLE_WEIGHTED_VALUE, EXAMPLE_TOL)
    )
    base = gbjs_divergence(ms, w)
    for perm in itertools.permutations(range(3)):
        value = gbjs_divergence([ms[i] for i in perm], [w[i] for i in perm])
        name = "permutation (" + ",".join(f"m{i + 1}" for i in perm) + ")"
        checks.append(close("C2", name, value, base, 1e-12))

    ms = ref.mass_functions(ref.AB, ref.EXAMPLE_OUTLIER)
    roots = {}
    for triple, (value, root) in ref.EXAMPLE_OUTLIER_VALUES.items():
        name = "GBJS(" + ",".join(f"m{i + 1}" for i in triple) + ")"
        d = gbjs_equal_weights([ms[i] for i in triple])
        roots[triple] = math.sqrt(d)
        checks.append(close("C3", name, d, value, EXAMPLE_TOL))
        checks.append(close("C3", "sqrt " + name, roots[triple], root, EXAMPLE_TOL))
    lhs = roots[(0, 1, 3)]
    rhs = roots[(0, 1, 2)] + roots[(1, 2, 3)]
    checks.append(
        Check("C3", "triangle check sqrt(m1,m2,m4) < sqrt(m1,m2,m3) + sqrt(m2,m3,m4)",
              lhs < rhs, lhs, rhs, detail=f"{lhs:.4f} < {rhs:.4f}")
    )
    return checks


def fault_diagnosis() -> list[Check]:
    checks = []
    for freq in ref.FREQUENCIES:
        report = fuse(ref.sensor_sources(freq))
        for labels, expected in ref.WEIGHTED_AVERAGE_EVIDENCE[freq].items():
            checks.append(
                close("C4", f"{freq} WAE {_key(labels)}", report.wae[labels], expected, TABLE_TOL)
            )
        for labels, expected in ref.FUSED[freq].items():
            checks.append(
                close("C5", f"{freq} fused {_key(labels)}", report.final[labels], expected, TABLE_TOL)
            )
        target = diagnose(report.final).members
        checks.append(
            Check("C5", f"{freq} diagnosis", target == ref.TARGET, detail=f"{_key(target)}")
        )
        ours = report.final[ref.TARGET]
        theirs = ref.JIANG_FUSED[freq][ref.TARGET]
        checks.append(
            Check("C6", f"{freq} belief on {{F2}} exceeds reference method", ours > theirs,
                  ours, theirs, detail=f"{ours:.4f} > {theirs:.4f} (reference, not computed)")
        )
    return checks


# oracles


def brute_force_dempster(m1: dict, m2: dict) -> dict:
    """Dempster's rule via the full focal-pair intersection table."""
    table = [[(b & c, x * y) for c, y in m2.items()] for b, x in m1.items()]
    k = sum(p for row in table for s, p in row if not s)
    out: dict = {}
    for row in table:
        for s, p in row:
            if s:
                out[s] = out.get(s, 0.0) + p
    return {s: v / (1.0 - k) for s, v in out.items()}


def direct_gbjs(ms: list[dict], weights) -> float:
    """Mixture entropy minus mean entropy, over the union of focal sets."""
    coords = set().union(*ms)

    def h(values):
        total = 0.0
        for v in values:
            v = v if v != 0.0 else EPSILON
            total -= v * math.log2(v)
        return total

    mixture = [sum(w * m.get(a, 0.0) for w, m in zip(weights, ms)) for a in coords]
    return h(mixture) - sum(w * h([m.get(a, 0.0) for a in coords]) for w, m in zip(weights, ms))


def random_mass_function(rng, frame: Frame, *, singletons_only=False, max_focal=6) -> MassFunction:
    n = len(frame)
    if singletons_only:
        pool = [1 << i for i in range(n)]
    else:
        pool = list(range(1, 1 << n))
    count = int(rng.integers(1, min(len(pool), max_focal) + 1))
    masks = rng.choice(pool, size=count, replace=False)
    values = rng.dirichlet(np.ones(count))
    return make_mass_function(
        frame, [(frame.labels_of(int(a)), float(v)) for a, v in zip(masks, values)]
    )


def random_frame(rng, max_size=4) -> Frame:
    return Frame([f"E{i}" for i in range(1, int(rng.integers(1, max_size + 1)) + 1)])


def _max_diff(a: MassFunction, b: MassFunction) -> float:
    da, db = dict(a.masses), dict(b.masses)
    return max(abs(da.get(k, 0.0) - db.get(k, 0.0)) for k in set(da) | set(db))


class _Tally:
    def __init__(self, criterion, name, tol=None):
        self.criterion, self.name, self.tol = criterion, name, tol
        self.cases = 0
        self.worst = 0.0
        self.failures = 0

    def add(self, ok: bool, err: float = 0.0):
        self.cases += 1
        self.worst = max(self.worst, err)
        self.failures += not ok

    def check(self) -> Check:
        return Check(
            self.criterion, self.name, self.failures == 0 and self.cases > 0,
            self.worst, 0.0, self.tol,
            detail=f"{self.cases} cases, {self.failures} failures, worst {self.worst:.2e}",
        )


def randomized_properties(cases: int = PROPERTY_CASES, seed: int = SEED) -> list[Check]:
    rng = np.random.default_rng(seed)
    t_sum = _Tally("C7", "combination sums to 1", 1e-9)
    t_bel = _Tally("C7", "0 <= Bel <= Pl <= 1")
    t_comm = _Tally("C7", "Dempster commutative (exact)", 0.0)
    t_assoc = _Tally("C7", "Dempster associative", 1e-9)
    t_vac = _Tally("C7", "vacuous BBA is identity", 1e-12)
    t_bound = _Tally("C7", "0 <= GBJS <= log2 k", 1e-9)
    t_forms = _Tally("C7", "entropy form equals expanded form", 1e-9)
    t_degen = _Tally("C7", "singleton-focal GBJS equals GJS", 1e-12)

    for _ in range(cases):
        frame = random_frame(rng)
        k = int(rng.integers(1, 6))
        ms = [random_mass_function(rng, frame) for _ in range(k)]
        a, b, c = (random_mass_function(rng, frame) for _ in range(3))

        try:
            combined = combine_n(ms)
        except TotalConflict:
            pass
        else:
            err = abs(combined.total - 1.0)
            t_sum.add(err <= 1e-9 and all(v >= 0 for _, v in combined.masses), err)

        for m in ms:
            ok = True
            for mask in range(1, frame.full_mask + 1):
                labels = frame.labels_of(mask)
                bel, pl = belief(m, labels), plausibility(m, labels)
                ok &= 0.0 <= bel <= pl <= 1.0 + 1e-12
            t_bel.add(ok)

        if conflict(a, b) < 0.999:
            ab, ba = dempster_combine(a, b), dempster_combine(b, a)
            t_comm.add(ab == ba, _max_diff(ab, ba))
        if max(conflict(a, b), conflict(b, c), conflict(a, c)) < 0.999:
            try:
                left = dempster_combine(dempster_combine(a, b), c)
                right = dempster_combine(a, dempster_combine(b, c))
            except TotalConflict:
                pass
            else:
                err = _max_diff(left, right)
                t_assoc.add(err <= 1e-9, err)

        v = vacuous(frame)
        err = max(_max_diff(dempster_combine(a, v), a), _max_diff(dempster_combine(v, a), a))
        t_vac.add(err <= 1e-12, err)

        w = rng.dirichlet(np.ones(k))
        d = gbjs_divergence(ms, w)
        t_bound.add(-1e-9 <= d <= math.log2(k) + 1e-9, max(0.0, -d, d - math.log2(k)))
        err = abs(d - gbjs_divergence_expanded(ms, w))
        t_forms.add(err <= 1e-9, err)

        bayes = [random_mass_function(rng, frame, singletons_only=True) for _ in range(k)]
        dists = [[m[s] for s in frame.singletons()] for m in bayes]
        err = abs(gbjs_divergence(bayes, w) - gjs_divergence(dists, w))
        t_degen.add(err <= 1e-12, err)

    return [t.check() for t in (t_sum, t_bel, t_comm, t_assoc, t_vac, t_bound, t_forms, t_degen)]


def oracle_equivalence(pairs: int = ORACLE_PAIRS, seed: int = SEED + 1) -> list[Check]:
    rng = np.random.default_rng(seed)
    tally = _Tally("C8", "Dempster vs brute-force intersection table", 1e-12)
    while tally.cases < pairs:
        frame = random_frame(rng)
        a, b = random_mass_function(rng, frame), random_mass_function(rng, frame)
        try:
            fast = dempster_combine(a, b).as_dict()
        except TotalConflict:
            continue
        slow = brute_force_dempster(a.as_dict(), b.as_dict())
        err = max(abs(fast.get(s, 0.0) - slow.get(s, 0.0)) for s in set(fast) | set(slow))
        tally.add(err <= 1e-12, err)

    sup_tally = _Tally("C8", "support degrees vs per-exclusion GBJS oracle", 1e-12)
    for freq in ref.FREQUENCIES:
        sources = ref.sensor_sources(freq)
        w = [1.0 / len(sources)] * len(sources)
        sup = support_degrees(sources, w)
        for j in range(len(sources)):
            rest = [s.mass.as_dict() for i, s in enumerate(sources) if i != j]
            err = abs(sup[j] - direct_gbjs(rest, leave_one_out_weights(w, j)))
            sup_tally.add(err <= 1e-12, err)
    return [tally.check(), sup_tally.check()]


CRITERIA = {
    "C1": "identical BBAs have zero divergence",
    "C2": "weighted divergence example and permutation symmetry",
    "C3": "outlier example divergences, square roots, triangle check",
    "C4": "weighted average evidence table",
    "C5": "fused results table and diagnosis",
    "C6": "comparison with reference method on {F2}",
    "C7": "randomized invariants",
    "C8": "oracle equivalence",
}


def run_all(cases: int = PROPERTY_CASES, pairs: int = ORACLE_PAIRS) -> list[Check]:
    return (
        divergence_examples()
        + fault_diagnosis()
        + randomized_properties(cases)
        + oracle_equivalence(pairs)
    )


def render_checks(checks: list[Check]) -> str:
    lines = []
    for criterion, title in CRITERIA.items():
        group = [c for c in checks if c.criterion == criterion]
        if not group:
            continue
        status = "PASS" if all(c.passed for c in group) else "FAIL"
        lines.append(f"[{status}] {criterion} {title}")
        for c in group:
            mark = "pass" if c.passed else "FAIL"
            if c.detail:
                info = c.detail
            elif c.expected is not None:
                info = f"computed {c.computed:.4f}  expected {c.expected:.4f}  tol {c.tolerance:g}"
            else:
                info = ""
            lines.append(f"    {mark}  {c.name:<58} {info}".rstrip())
    passed = sum(c.passed for c in checks)
    lines.append(f"{passed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
