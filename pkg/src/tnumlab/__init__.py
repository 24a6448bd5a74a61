"""tnumlab: the tristate-number abstract domain, with its verification,
precision, and performance harnesses."""

from ._backend import BACKEND, get_kernels
from .core import (
    BitsAboveWidth, EmptySet, IllFormed, IndexRange, Order, ParseError,
    TimerUnavailable, Tnum, TnumError, Trit, WidthMismatch, WidthRange,
    WidthTooLargeForEnumeration, cardinality, compare, const,
    enumerate_tnums, format, format_hex, is_member, make, parse, top,
    trit_at,
)
from .ops import (
    OpId, apply_op, bitwise_mul, bitwise_mul_opt, kern_mul, our_mul,
    our_mul_simplified, tnum_add, tnum_and, tnum_arsh, tnum_lshift,
    tnum_or, tnum_rshift, tnum_sub, tnum_xor,
)

__version__ = "0.1.0"
