"""Non-reversibility witnesses: plans, construction and slot-based verification."""
from .models import CardinalAbsorb, MergeShift, OrdinalShift, SparseChain, WitnessCheck, WitnessPlan
from .coloring import partition_limit, split_prefix
from .verifier import verify_witness
from .builder import build_witness
from .oracle import bounded_oracle_search

__all__ = [
    "CardinalAbsorb",
    "MergeShift",
    "OrdinalShift",
    "SparseChain",
    "WitnessCheck",
    "WitnessPlan",
    "bounded_oracle_search",
    "build_witness",
    "partition_limit",
    "split_prefix",
    "verify_witness",
]
