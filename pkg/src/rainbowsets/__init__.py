"""Rainbow independent sets in powers of sparse graphs."""
from .bounds import m_bound
from .exceptions import CapExceeded, ExtractionError, PowerAgreementError
from .extract import (
    extract_bounded_expansion,
    extract_treedepth,
    extract_treedepth_graph,
    rainbow_induced_matching,
)
from .family import FailureReport, IndependentFamily, RainbowSelection
from .forest import RootedForest, closure, treedepth_exact
from .graph import Graph, generate, power, subdivide_once
from .oracle import check_chromatic_bound, f_exact, find_rainbow_bruteforce
from .sparsity import (
    ColorAssignment,
    LinearOrder,
    excellent_refinement,
    low_treedepth_coloring,
    shortest_path_closure,
    wcol,
    wreach,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "ColorAssignment", "ExtractionError", "FailureReport", "Graph",
    "IndependentFamily", "LinearOrder", "PowerAgreementError", "RainbowSelection",
    "RootedForest", "check_chromatic_bound", "closure", "excellent_refinement",
    "extract_bounded_expansion", "extract_treedepth", "extract_treedepth_graph",
    "f_exact", "find_rainbow_bruteforce", "generate", "low_treedepth_coloring",
    "m_bound", "power", "rainbow_induced_matching", "shortest_path_closure",
    "subdivide_once", "treedepth_exact", "wcol", "wreach",
]
