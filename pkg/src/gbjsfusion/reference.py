"""Published reference data: worked divergence examples and the motor-rotor case.

Propositions are tuples of frame labels.  Values are copied at the printed
precision (four decimals).
"""

from __future__ import annotations

from .evidence import Frame, MassFunction, make_mass_function
from .fusion import EvidenceSource

ABC = ("A", "B", "C")
AB = ("A", "B")
FAULTS = ("F1", "F2", "F3")

# three identical mass functions, equal weights: divergence 0
EXAMPLE_IDENTICAL = [
    {("A",): 0.6, ("B",): 0.1, ("C",): 0.3},
    {("A",): 0.6, ("B",): 0.1, ("C",): 0.3},
    {("A",): 0.6, ("B",): 0.1, ("C",): 0.3},
]
EXAMPLE_IDENTICAL_VALUE = 0.0

EXAMPLE_WEIGHTED = [
    {("A",): 0.7, ("B",): 0.1, ("C",): 0.2},
    {("A",): 0.6, ("B",): 0.1, ("C",): 0.3},
    {("A",): 0.3, ("B",): 0.2, ("C",): 0.5},
]
EXAMPLE_WEIGHTED_WEIGHTS = (0.5, 0.4, 0.1)
EXAMPLE_WEIGHTED_VALUE = 0.0428

# m4 is the outlier supporting B
EXAMPLE_OUTLIER = [
    {("A",): 0.98, ("B",): 0.01, ("A", "B"): 0.01},
    {("A",): 0.97, ("B",): 0.02, ("A", "B"): 0.01},
    {("A",): 0.90, ("B",): 0.05, ("A", "B"): 0.05},
    {("A",): 0.01, ("B",): 0.98, ("A", "B"): 0.01},
]
# 0-based index triples -> (divergence, square root)
EXAMPLE_OUTLIER_VALUES = {
    (0, 1, 2): (0.0188, 0.1370),
    (0, 1, 3): (0.8148, 0.9027),
    (1, 2, 3): (0.7617, 0.8727),
}

FREQUENCIES = ("1X", "2X", "3X")

SENSOR_REPORTS = {
    "1X": [
        {("F2",): 0.8176, ("F3",): 0.0003, ("F1", "F2"): 0.1553, ("F1", "F2", "F3"): 0.0268},
        {("F2",): 0.5658, ("F3",): 0.0009, ("F1", "F2"): 0.0646, ("F1", "F2", "F3"): 0.3687},
        {("F2",): 0.2403, ("F3",): 0.0004, ("F1", "F2"): 0.0141, ("F1", "F2", "F3"): 0.7452},
    ],
    "2X": [
        {("F2",): 0.6229, ("F1", "F2", "F3"): 0.3771},
        {("F2",): 0.7660, ("F1", "F2", "F3"): 0.2341},
        {("F2",): 0.8598, ("F1", "F2", "F3"): 0.1402},
    ],
    "3X": [
        {("F1",): 0.3666, ("F2",): 0.4563, ("F1", "F2"): 0.1185, ("F1", "F2", "F3"): 0.0586},
        {("F1",): 0.2793, ("F2",): 0.4151, ("F1", "F2"): 0.2652, ("F1", "F2", "F3"): 0.0404},
        {("F1",): 0.2897, ("F2",): 0.4331, ("F1", "F2"): 0.2470, ("F1", "F2", "F3"): 0.0302},
    ],
}

WEIGHTED_AVERAGE_EVIDENCE = {
    "1X": {("F2",): 0.5332, ("F3",): 0.0007, ("F1", "F2"): 0.0671, ("F1", "F2", "F3"): 0.3990},
    "2X": {("F2",): 0.7677, ("F1", "F2", "F3"): 0.2324},
    "3X": {("F1",): 0.2864, ("F2",): 0.4253, ("F1", "F2"): 0.2529, ("F1", "F2", "F3"): 0.0354},
}

FUSED = {
    "1X": {("F2",): 0.8982, ("F3",): 0.0003, ("F1", "F2"): 0.0378, ("F1", "F2", "F3"): 0.0636},
    "2X": {("F2",): 0.9877, ("F1", "F2", "F3"): 0.0126},
    "3X": {("F1",): 0.3266, ("F2",): 0.6365, ("F1", "F2"): 0.0368, ("F1", "F2", "F3"): 0.0001},
}

# comparison method of Jiang et al.: reference constants only, never computed here
JIANG_FUSED = {
    "1X": {("F2",): 0.8861, ("F3",): 0.0002, ("F1", "F2"): 0.0582, ("F1", "F2", "F3"): 0.0555},
    "2X": {("F2",): 0.9621, ("F1", "F2", "F3"): 0.0371},
    "3X": {("F1",): 0.3384, ("F2",): 0.5904, ("F1", "F2"): 0.0651, ("F1", "F2", "F3"): 0.0061},
}

TARGET = ("F2",)


def mass_functions(labels, rows) -> list[MassFunction]:
    frame = Frame(labels)
    return [make_mass_function(frame, row) for row in rows]


def sensor_sources(frequency: str) -> list[EvidenceSource]:
    return [
        EvidenceSource(m, label=f"S{i}")
        for i, m in enumerate(mass_functions(FAULTS, SENSOR_REPORTS[frequency]), start=1)
    ]
