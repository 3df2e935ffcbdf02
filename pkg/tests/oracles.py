"""Independent reference computations used to freeze expected values.

Mass functions here are plain ``{frozenset(labels): mass}`` dicts and every
formula is written out directly from its definition, with no shared code
with the package.
"""

import itertools
import math

EPS = 1e-12


def subsets(labels):
    labels = list(labels)
    for r in range(1, len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            yield frozenset(combo)


def belief(m, a):
    a = frozenset(a)
    return sum(m.get(b, 0.0) for b in subsets(a))


def plausibility(m, a):
    a = frozenset(a)
    return sum(v for b, v in m.items() if b & a)


def dempster(m1, m2, frame):
    """Full 2^N x 2^N table over the power set, including zero-mass cells."""
    power = list(subsets(frame))
    joint = {}
    k = 0.0
    for b in power:
        for c in power:
            p = m1.get(b, 0.0) * m2.get(c, 0.0)
            if b & c:
                joint[b & c] = joint.get(b & c, 0.0) + p
            else:
                k += p
    return {a: v / (1.0 - k) for a, v in joint.items() if v > 0.0}


def entropy(values):
    total = 0.0
    for v in values:
        v = v if v != 0.0 else EPS
        total += v * math.log2(1.0 / v)
    return total


def gbjs_expanded(ms, weights):
    """Weighted sum of log-ratios against the mixture, one coordinate per focal set."""
    coords = sorted(set().union(*ms), key=sorted)
    total = 0.0
    for w, m in zip(weights, ms):
        for a in coords:
            mix = sum(wi * mi.get(a, 0.0) for wi, mi in zip(weights, ms)) or EPS
            x = m.get(a, 0.0) or EPS
            total += w * x * math.log2(x / mix)
    return total
