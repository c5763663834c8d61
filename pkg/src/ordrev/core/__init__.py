"""Ordinal arithmetic, chain families and the reversibility decision procedures."""
from .ordinal import OMEGA, ONE, ZERO, Ordinal, make_cnf, omega_power
from .counts import ABSENT, INF, Count
from .verdict import Clause, TraceStep, Verdict
from .natrev import (
    CardinalSequence,
    CardinalValue,
    NatMultiset,
    NatProgression,
    SemigroupCertificate,
    SemigroupTable,
    decide_cardinal_reversible,
    decide_nat_reversible,
)
from .family import FamilyPresentation, Orientation, Progression, Single, normalize
from .decide import decide, decide_fixed_gamma, decide_well, detect_nonrev_clause

__all__ = [
    "ABSENT",
    "CardinalSequence",
    "CardinalValue",
    "Clause",
    "Count",
    "FamilyPresentation",
    "INF",
    "NatMultiset",
    "NatProgression",
    "OMEGA",
    "ONE",
    "Ordinal",
    "Orientation",
    "Progression",
    "SemigroupCertificate",
    "SemigroupTable",
    "Single",
    "TraceStep",
    "Verdict",
    "ZERO",
    "decide",
    "decide_cardinal_reversible",
    "decide_fixed_gamma",
    "decide_nat_reversible",
    "decide_well",
    "detect_nonrev_clause",
    "make_cnf",
    "normalize",
    "omega_power",
]
