"""ffdioph: exact Diophantine approximation over fields of formal power series.

The library works in F_q((z^-1)) with F_q[z] as the ring of "integers":
continued fractions, Ostrowski numeration, best-approximation sequences,
transference, approximation-exponent witnesses, singularity statistics, and
finite-depth Cantor survivor constructions.  All arithmetic is exact; norms
are integer q-exponents and every inequality is decided by integer
comparisons.
"""

from .errors import (
    BudgetExceeded,
    CFTooShort,
    DepthTooSmall,
    DivideByZero,
    FFDiophError,
    HypothesisFails,
    IndeterminateZero,
    InvalidPrefix,
    NotExact,
    NotFoundAtBound,
    PrecisionExceeded,
    PrefixTooShort,
    SpecExhausted,
    VerificationDefect,
)
from .fields import GF, FieldSpec, Fq, FqElem, default_modulus
from .laurent import Laurent, series_of_rational
from .norms import NormExp
from .poly import Poly, all_polys, gcd
from .vectors import LaurentMatrix, LaurentVec, PolyVec, bracket_dist

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldSpec",
    "Fq",
    "FqElem",
    "default_modulus",
    "Laurent",
    "series_of_rational",
    "NormExp",
    "Poly",
    "all_polys",
    "gcd",
    "LaurentMatrix",
    "LaurentVec",
    "PolyVec",
    "bracket_dist",
    "FFDiophError",
    "IndeterminateZero",
    "PrecisionExceeded",
    "DivideByZero",
    "DepthTooSmall",
    "InvalidPrefix",
    "SpecExhausted",
    "PrefixTooShort",
    "BudgetExceeded",
    "CFTooShort",
    "NotFoundAtBound",
    "HypothesisFails",
    "NotExact",
    "VerificationDefect",
]
