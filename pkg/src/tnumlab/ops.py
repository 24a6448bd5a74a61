"""Abstract transfer functions over tnums.

Arithmetic: the carry-free addition and subtraction used by the Linux
kernel, the kernel's shift-and-accumulate multiplication (``kern_mul``),
long multiplication over per-trit partial products (``bitwise_mul``, plus
the variant that replaces its per-trit kill loop with one word operation),
and the value/mask-decomposed multiplication now used by the kernel
(``our_mul``; ``our_mul_simplified`` is its fixed-trip-count form).

Bitwise and shift operators follow the kernel's constructions; the
verification sweeps gate them against the brute-force oracle rather than
trusting the formulas.

Mixed widths are rejected everywhere; no zero-extension is implied.
"""

from __future__ import annotations

import enum

from . import _opcodes
from ._backend import kernels
from .core import IndexRange, Tnum, WidthMismatch

__all__ = [
    "OpId",
    "tnum_add", "tnum_sub", "tnum_and", "tnum_or", "tnum_xor",
    "tnum_lshift", "tnum_rshift", "tnum_arsh",
    "kern_mul", "bitwise_mul", "bitwise_mul_opt",
    "our_mul", "our_mul_simplified",
    "apply_op",
]


class OpId(enum.Enum):
    """Every abstract operator under test, by its wire name."""

    ADD = "add"
    SUB = "sub"
    AND = "and"
    OR = "or"
    XOR = "xor"
    LSHIFT = "lshift"
    RSHIFT = "rshift"
    ARSH = "arsh"
    KERN_MUL = "kern_mul"
    BITWISE_MUL = "bitwise_mul"
    BITWISE_MUL_OPT = "bitwise_mul_opt"
    OUR_MUL = "our_mul"
    OUR_MUL_SIMPLIFIED = "our_mul_simplified"

    @property
    def code(self) -> int:
        return _CODES[self]

    @property
    def is_shift(self) -> bool:
        return self in (OpId.LSHIFT, OpId.RSHIFT, OpId.ARSH)

    @property
    def is_mul(self) -> bool:
        return self.code in _opcodes.MUL_OPS

    @classmethod
    def from_name(cls, name: str) -> "OpId":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(
                f"unknown operator {name!r}; expected one of "
                f"{', '.join(o.value for o in cls)}") from None


_CODES = {
    OpId.ADD: _opcodes.ADD,
    OpId.SUB: _opcodes.SUB,
    OpId.AND: _opcodes.AND,
    OpId.OR: _opcodes.OR,
    OpId.XOR: _opcodes.XOR,
    OpId.LSHIFT: _opcodes.LSHIFT,
    OpId.RSHIFT: _opcodes.RSHIFT,
    OpId.ARSH: _opcodes.ARSH,
    OpId.KERN_MUL: _opcodes.KERN_MUL,
    OpId.BITWISE_MUL: _opcodes.BITWISE_MUL,
    OpId.BITWISE_MUL_OPT: _opcodes.BITWISE_MUL_OPT,
    OpId.OUR_MUL: _opcodes.OUR_MUL,
    OpId.OUR_MUL_SIMPLIFIED: _opcodes.OUR_MUL_SIMPLIFIED,
}


def _binary(code: int, p: Tnum, q: Tnum) -> Tnum:
    if p.width != q.width:
        raise WidthMismatch(f"operand widths differ: {p.width} vs {q.width}")
    rv, rm = kernels.apply_binary(code, p.value, p.mask, q.value, q.mask,
                                  p.width)
    return Tnum(rv, rm, p.width)


def _shift(code: int, t: Tnum, k: int) -> Tnum:
    if k < 0:
        raise IndexRange(f"shift amount must be nonnegative, got {k}")
    rv, rm = kernels.apply_shift(code, t.value, t.mask, t.width, k)
    return Tnum(rv, rm, t.width)


def tnum_add(p: Tnum, q: Tnum) -> Tnum:
    """Sound and optimal abstract addition (carry-free formulation)."""
    return _binary(_opcodes.ADD, p, q)


def tnum_sub(p: Tnum, q: Tnum) -> Tnum:
    """Sound and optimal abstract subtraction (borrow-free formulation)."""
    return _binary(_opcodes.SUB, p, q)


def tnum_and(p: Tnum, q: Tnum) -> Tnum:
    return _binary(_opcodes.AND, p, q)


def tnum_or(p: Tnum, q: Tnum) -> Tnum:
    return _binary(_opcodes.OR, p, q)


def tnum_xor(p: Tnum, q: Tnum) -> Tnum:
    return _binary(_opcodes.XOR, p, q)


def tnum_lshift(t: Tnum, k: int) -> Tnum:
    """Shift value and mask left by k; k >= width yields the zero constant."""
    return _shift(_opcodes.LSHIFT, t, k)


def tnum_rshift(t: Tnum, k: int) -> Tnum:
    """Logical right shift of value and mask."""
    return _shift(_opcodes.RSHIFT, t, k)


def tnum_arsh(t: Tnum, k: int) -> Tnum:
    """Arithmetic right shift: the sign trit floods the vacated positions.

    Both fields are sign-extended from bit width-1, so an unknown sign
    replicates unknowns.  k >= width saturates to the all-sign tnum.
    """
    return _shift(_opcodes.ARSH, t, k)


def kern_mul(p: Tnum, q: Tnum) -> Tnum:
    """Kernel-style multiplication: two half-multiply-accumulate passes."""
    return _binary(_opcodes.KERN_MUL, p, q)


def bitwise_mul(p: Tnum, q: Tnum) -> Tnum:
    """Long multiplication; unknown multiplier trits kill the multiplicand
    one trit at a time."""
    return _binary(_opcodes.BITWISE_MUL, p, q)


def bitwise_mul_opt(p: Tnum, q: Tnum) -> Tnum:
    """bitwise_mul with the kill loop replaced by tnum(0, q.value|q.mask)."""
    return _binary(_opcodes.BITWISE_MUL_OPT, p, q)


def our_mul(p: Tnum, q: Tnum) -> Tnum:
    """Value/mask-decomposed multiplication (single loop, early exit)."""
    return _binary(_opcodes.OUR_MUL, p, q)


def our_mul_simplified(p: Tnum, q: Tnum) -> Tnum:
    """Fixed-trip-count form of our_mul with an explicit value accumulator."""
    return _binary(_opcodes.OUR_MUL_SIMPLIFIED, p, q)


def apply_op(op: OpId, p: Tnum, q: Tnum | None = None,
             shift: int | None = None) -> Tnum:
    """Dispatch by operator id; shifts take ``shift``, the rest take ``q``."""
    if op.is_shift:
        if shift is None:
            raise ValueError(f"{op.value} needs a shift amount")
        return _shift(op.code, p, shift)
    if q is None:
        raise ValueError(f"{op.value} needs a second operand")
    return _binary(op.code, p, q)
