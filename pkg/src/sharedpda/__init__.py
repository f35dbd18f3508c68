"""Shared-cache coded caching schemes built from placement delivery arrays."""

from .config import BudgetExceeded
from .constructions import construct_b, construct_mn
from .delivery import (DecodeError, DeliveryRun, Library, Placement, Transmission, decode, deliver,
                       generate_library, place, simulate)
from .gpda import build_gpda, reduce_to_pda
from .ordering import (ColumnOrdering, OrderingTrace, alpha_star, const_b_order, exhaustive_order,
                       greedy_order)
from .pda import (STAR, GeneralizedPda, InvalidArrayError, Pda, SymbolStats, ValidationReport,
                  Violation, check_gpda, check_pda, symbol_stats, validate_gpda, validate_pda)
from .profile import Profile, normalize_profile, parse_profile
from .rate import (LoadValue, load_const_b_ordered, load_const_b_unordered, load_from_gpda,
                   load_from_pda, load_mn_baseline, tau_values)

__version__ = "0.1.0"
