"""Computable topology over Baire-space names: spaces, sets, compactness and reals."""

from . import names, t2vm, spaces, sets, compact  # noqa: F401
from . import overt, separation, admissibility, reals  # noqa: F401
