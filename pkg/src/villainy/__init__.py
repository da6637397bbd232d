"""Exact villainy of graph colorings and verification of its known results."""

from .canonical import canonical_form, enumerate_nonisomorphic
from .characterize import (
    ClassLabel,
    KnownValue,
    classify_theorem5,
    known_villainy,
    known_weak_villainy,
    lemma_implications,
)
from .coloring import chromatic_number, enumerate_proper_colorings, feasible_multiplicities
from .engine import (
    InfeasibleRepair,
    RepairMode,
    VillainyCertificate,
    repair_distance,
    villainy,
    weak_villainy,
    worst_assignment,
)
from .families import FamilySpec, build_family, parse_family
from .graph import Graph
from .graph6 import emit_graph6, parse_graph6
from .structure import StructureReport, analyze_structure

__all__ = [
    "ClassLabel", "FamilySpec", "Graph", "InfeasibleRepair", "KnownValue", "RepairMode",
    "StructureReport", "VillainyCertificate", "analyze_structure", "build_family",
    "canonical_form", "chromatic_number", "classify_theorem5", "emit_graph6",
    "enumerate_nonisomorphic", "enumerate_proper_colorings", "feasible_multiplicities",
    "known_villainy", "known_weak_villainy", "lemma_implications", "parse_family",
    "parse_graph6", "repair_distance", "villainy", "weak_villainy", "worst_assignment",
]

__version__ = "0.1.0"
