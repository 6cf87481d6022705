from .construct import compose_ies, greedy_ies, ies_consistent_acyclic, implied_literal_options, unique_ies_acyclic
from .models import IesOption, IesReport, Membership
from .presence import in_some_ies_acyclic_inconsistent, in_some_ies_noncycle_clause
from .report import report
from .sizes import CyclicImpliedSize, InconsistentSize, min_inconsistent_size_acyclic, size_cyclic_implied
from .verify import has_unique_ies, in_all_ies, is_ies, structural_violations

__all__ = [
    "CyclicImpliedSize",
    "IesOption",
    "IesReport",
    "InconsistentSize",
    "Membership",
    "compose_ies",
    "greedy_ies",
    "has_unique_ies",
    "ies_consistent_acyclic",
    "implied_literal_options",
    "in_all_ies",
    "in_some_ies_acyclic_inconsistent",
    "in_some_ies_noncycle_clause",
    "is_ies",
    "min_inconsistent_size_acyclic",
    "report",
    "size_cyclic_implied",
    "structural_violations",
    "unique_ies_acyclic",
]
