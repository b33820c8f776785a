from .arith import *
from .classifier import *
from .glhall import *
from .oracle import *
from .orders import *
from .utils import (
    BOUND_ENV_VAR,
    DEFAULT_ENUMERATION_BOUND,
    DEFAULT_MATRIX_ENUMERATION_BOUND,
    CatalogParseError,
    EnumerationBoundError,
    FactorizationBoundError,
    HallPiException,
    InvalidInputError,
    NonSimpleGroupError,
    RecordParseError,
    RegimeError,
    UndefinedOrderError,
    get_enumeration_bound,
    raise_for_regime,
)
