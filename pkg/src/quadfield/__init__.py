"""Exact invariants of real quadratic fields and a checker for class number one
criteria on the family d = a^2 m^2 + 4ap."""

__version__ = "0.1.0"

from .intbase import BudgetExceeded, factorize, gcd, is_prime, is_squarefree, isqrt, kronecker
from .cf_pell import (
    CFExpansion,
    FundUnit,
    PellWitness,
    QuadSurd,
    cf_expand,
    convergents,
    fundamental_unit,
    is_representable,
    solve_norm_form,
)
from .forms import (
    ClassGroupSummary,
    QuadForm,
    SplittingType,
    analytic_class_number,
    classify_rd,
    discriminant_of,
    genus_rank,
    narrow_class_number,
    splitting_type,
    wide_class_number,
)
from .theorem_lab import FamilyParams, TheoremReport, Verdict, verify_theorem
from ._kernels import BACKEND
