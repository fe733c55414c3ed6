"""Systems of unbiased representatives for families of +/-1 bicolorings."""

from .core import (
    INFEASIBLE,
    Bicoloring,
    BicoloringFamily,
    CapExceeded,
    Certificate,
    DimensionMismatch,
    IndexSet,
    InfeasibleError,
    PreconditionError,
    SurError,
    SurFamily,
    TrivialBicoloringError,
    Witness,
    enumerate_even_subsets,
    enumerate_k_bicolorings,
    enumerate_nontrivial_bicolorings,
    inner_product,
    is_unbiased_rep,
    verify_sur,
)

__version__ = "0.1.0"
