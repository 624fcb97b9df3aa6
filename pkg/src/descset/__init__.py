"""Exact ranks, convergence verdicts and reductions for step-function families on Cantor space."""
from .cantor import ClopenSet, Cylinder, Point, Undecidable, h_enum, h_inv, lex_compare
from .catalog import NodeIndicatorsByH, Region, SplitCantorCanonical, diff_region, evaluate
from .convergence import Converges, Diverges, decide_convergence, decide_convergence_to, refine_to_convergent
from .lftrees import Caps, branch_witness, newp3_monotone, tdl_member, truncate_tree
from .ordinals import Ordinal, ord_add, ord_compare, ord_sup_plus_one
from .rank import alpha_full, alpha_on, build_rank_example
from .reductions import DecidablePointSet, h_image, phi_map, verify_p1
from .trees import FinTree, find_monotone_map, is_wellfounded, schema_rank

__version__ = "0.1.0"
