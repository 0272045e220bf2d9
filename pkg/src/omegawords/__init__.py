"""Ramsey theory for located words over a dominated alphabet.

Word algebra, transfinite Schreier families, extraction, hereditary-family
indices, and a finite search engine for monochromatic witnesses.
"""

from .errors import BudgetExceeded, OmegaWordsError, OrderError, OrdinalSyntaxError
from .extraction import e, ev, in_L_xi, is_extraction, is_orderly, projection
from .families import (
    AllTuples,
    Derived,
    ExplicitFinite,
    FamilyContext,
    Intersect,
    LenAtMost,
    SchreierHered,
    Union,
    derivative,
    strong_cb_index,
)
from .ordinal import OMEGA, ONE, ZERO, Ordinal, format_ordinal, fundamental, parse
from .schreier import canonical_decomposition, feed, member, start
from .search import Coloring, SemigroupSpec, find_homogeneous, verify_homogeneous
from .words import DominationSeq, LocatedWord, OmegaWord, concat, less, plus, t_p

__version__ = "0.1.0"
