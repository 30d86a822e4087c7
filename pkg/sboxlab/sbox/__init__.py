from .codec import parse_sbox, read_sbox, serialize_sbox, write_sbox
from .construction import ConstructionTrace, construct_many, construct_sbox, random_seeds
from .sbox import (
    CycleStructure,
    SBox,
    StructuralReport,
    cycle_of,
    format_ring,
    is_strong,
    structural_report,
)
from .sbox_metrics import MetricsReport, batch_stats, full_report, render_table
from .tables import BuiltinSBox, builtin_sbox

__all__ = [
    "BuiltinSBox",
    "ConstructionTrace",
    "CycleStructure",
    "MetricsReport",
    "SBox",
    "StructuralReport",
    "batch_stats",
    "builtin_sbox",
    "construct_many",
    "construct_sbox",
    "cycle_of",
    "format_ring",
    "full_report",
    "is_strong",
    "parse_sbox",
    "random_seeds",
    "read_sbox",
    "render_table",
    "serialize_sbox",
    "structural_report",
    "write_sbox",
]
