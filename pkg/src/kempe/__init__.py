"""Kempe-change recoloring of graph colorings.

Sequences of Kempe changes between proper colorings for degenerate,
bounded-mad, bounded-treewidth and bounded-degree graphs, a brute-force
oracle for small instances and file formats for a command line tool.
"""
from .core import (
    Coloring,
    Graph,
    KempeMove,
    ListAssignment,
    MoveSequence,
    VertexOrdering,
    apply_move,
    degeneracy,
    degeneracy_ordering,
    invert_sequence,
    is_proper,
    kempe_chain,
    replay,
    verify_sequence,
)
from .degenerate import RecolorSetting, classify_bad, equalize, target_recolor
from .delta import delta_equalize, eligible_pairs, identify, lift_quotient_move, separator_equalize
from .errors import KempeError, PreconditionViolated
from .lvm import lvm_sequence
from .mad import Layering, compute_layering, mad_equalize
from .oracle import build_reconf, is_frozen, oracle_report
from .treewidth import ChordalCompletion, TreeDecomposition, chordal_completion, chordal_equalize, peo, tw_equalize

__all__ = [
    "ChordalCompletion", "Coloring", "Graph", "KempeError", "KempeMove", "Layering",
    "ListAssignment", "MoveSequence", "PreconditionViolated", "RecolorSetting",
    "TreeDecomposition", "VertexOrdering", "apply_move", "build_reconf", "chordal_completion",
    "chordal_equalize", "classify_bad", "compute_layering", "degeneracy", "degeneracy_ordering",
    "delta_equalize", "eligible_pairs", "equalize", "identify", "invert_sequence", "is_frozen",
    "is_proper", "kempe_chain", "lift_quotient_move", "lvm_sequence", "mad_equalize",
    "oracle_report", "peo", "replay", "separator_equalize", "target_recolor", "tw_equalize",
    "verify_sequence",
]
