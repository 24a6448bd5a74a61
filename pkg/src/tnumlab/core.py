"""Tristate numbers (tnums): bit-level abstract values.

A tnum tracks, for every bit of an n-bit word, whether that bit is known to
be 0, known to be 1, or unknown across all concrete values the word may
take.  It is stored as a pair of unsigned words ``(value, mask)`` plus an
explicit ``width``:

* a set ``mask`` bit marks the position as unknown,
* at known positions the bit of ``value`` carries the known bit,
* positions with both ``value`` and ``mask`` set do not encode a trit; such
  pairs are rejected as ill-formed rather than representable.

A concrete word ``x`` is a member of tnum ``t`` iff ``x & ~t.mask ==
t.value``.  All words are kept in 64-bit range; every operation works
modulo ``2**width`` so one implementation serves widths 1..64.

Tnums are immutable; every function in this package is pure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "Tnum", "Trit", "Order",
    "TnumError", "IllFormed", "WidthRange", "BitsAboveWidth", "IndexRange",
    "WidthMismatch", "ParseError", "WidthTooLargeForEnumeration", "EmptySet",
    "TimerUnavailable",
    "make", "trit_at", "is_member", "compare", "parse", "format", "format_hex",
    "top", "const", "cardinality", "enumerate_tnums", "word_mask",
]

MAX_WIDTH = 64

# Widest enumeration this package will attempt (3**16 tnums / 2**16 words).
ENUM_WIDTH_LIMIT = 16


class TnumError(Exception):
    """Base class for all tnum domain errors."""


class IllFormed(TnumError):
    """value & mask != 0: the pair does not encode trits."""


class WidthRange(TnumError):
    """Width outside 1..64."""


class BitsAboveWidth(TnumError):
    """A word has bits set at or above the stated width."""


class IndexRange(TnumError):
    """Bit/trit index outside 0..width-1 (or a negative shift amount)."""


class WidthMismatch(TnumError):
    """Operands of a binary operation have different widths."""


class ParseError(TnumError):
    """Text does not parse as a tnum; ``position`` is the offending index."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None
                         else f"{message} (position {position})")
        self.position = position


class WidthTooLargeForEnumeration(TnumError):
    """An enumeration-based oracle was asked to run above its guard width."""


class EmptySet(TnumError):
    """A concrete set that must be nonempty is empty."""


class TimerUnavailable(TnumError):
    """No usable monotonic high-resolution timing source."""


def word_mask(width: int) -> int:
    """All-ones word of the given width."""
    return (1 << width) - 1


def _check_width(width: int) -> None:
    if not isinstance(width, int) or not 1 <= width <= MAX_WIDTH:
        raise WidthRange(f"width must be in 1..{MAX_WIDTH}, got {width!r}")


class Trit(enum.Enum):
    ZERO = 0
    ONE = 1
    UNKNOWN = 2

    def __str__(self) -> str:
        return {Trit.ZERO: "0", Trit.ONE: "1", Trit.UNKNOWN: "x"}[self]


class Order(enum.Enum):
    """Outcome of comparing two tnums under the precision partial order."""

    EQUAL = "equal"
    LEFT_MORE_PRECISE = "left_more_precise"
    RIGHT_MORE_PRECISE = "right_more_precise"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True, slots=True)
class Tnum:
    """A well-formed tristate number: ``(value, mask)`` at a fixed width."""

    value: int
    mask: int
    width: int

    def __post_init__(self) -> None:
        _check_width(self.width)
        limit = 1 << self.width
        if not (0 <= self.value < limit):
            raise BitsAboveWidth(
                f"value {self.value:#x} does not fit in {self.width} bits")
        if not (0 <= self.mask < limit):
            raise BitsAboveWidth(
                f"mask {self.mask:#x} does not fit in {self.width} bits")
        if self.value & self.mask:
            raise IllFormed(
                f"value {self.value:#x} and mask {self.mask:#x} overlap")

    def __str__(self) -> str:
        return format(self)

    def is_const(self) -> bool:
        return self.mask == 0


def make(value: int, mask: int, width: int) -> Tnum:
    """Construct a tnum, rejecting ill-formed or out-of-range fields."""
    return Tnum(value, mask, width)


def top(width: int) -> Tnum:
    """The all-unknown tnum: every word of the width is a member."""
    _check_width(width)
    return Tnum(0, word_mask(width), width)


def const(x: int, width: int) -> Tnum:
    """The singleton tnum whose only member is ``x``."""
    return Tnum(x, 0, width)


def cardinality(t: Tnum) -> int:
    """Number of members: 2**popcount(mask), one choice per unknown bit."""
    return 1 << t.mask.bit_count()


def trit_at(t: Tnum, k: int) -> Trit:
    """The trit at bit position ``k`` (0 = least significant)."""
    if not 0 <= k < t.width:
        raise IndexRange(f"trit index {k} outside 0..{t.width - 1}")
    if (t.mask >> k) & 1:
        return Trit.UNKNOWN
    return Trit.ONE if (t.value >> k) & 1 else Trit.ZERO


def is_member(x: int, t: Tnum) -> bool:
    """True iff the known bits of ``t`` match the corresponding bits of ``x``."""
    if not 0 <= x < (1 << t.width):
        raise BitsAboveWidth(f"{x:#x} does not fit in {t.width} bits")
    return (x & ~t.mask) == t.value


def _refines(a: Tnum, b: Tnum) -> bool:
    # a below b in the lattice: every unknown of a is unknown in b and the
    # known trits of b are identical in a; equivalently gamma(a) <= gamma(b).
    return (a.mask & ~b.mask) == 0 and (a.value & ~b.mask) == b.value


def compare(a: Tnum, b: Tnum) -> Order:
    """Classify ``a`` against ``b`` in the precision partial order."""
    if a.width != b.width:
        raise WidthMismatch(f"cannot compare width {a.width} with {b.width}")
    if a.value == b.value and a.mask == b.mask:
        return Order.EQUAL
    if _refines(a, b):
        return Order.LEFT_MORE_PRECISE
    if _refines(b, a):
        return Order.RIGHT_MORE_PRECISE
    return Order.INCOMPARABLE


_TRIT_CHARS = {"0": (0, 0), "1": (1, 0), "x": (0, 1), "μ": (0, 1), "?": (0, 1)}


def parse(text: str, width: int) -> Tnum:
    """Parse a trit string (``x10``; MSB first) or hex pair (``v=0x2,m=0x4``).

    Trit strings shorter than the width are zero-extended on the left.
    """
    _check_width(width)
    if "=" in text:
        return _parse_hex(text, width)
    if not 1 <= len(text) <= width:
        raise ParseError(
            f"trit string {text!r} has length {len(text)}, expected 1..{width}")
    value = mask = 0
    for i, ch in enumerate(text):
        try:
            vbit, mbit = _TRIT_CHARS[ch]
        except KeyError:
            raise ParseError(f"invalid trit character {ch!r}", position=i) from None
        k = len(text) - 1 - i
        value |= vbit << k
        mask |= mbit << k
    return Tnum(value, mask, width)


def _parse_hex(text: str, width: int) -> Tnum:
    fields = text.split(",")
    if len(fields) != 2:
        raise ParseError(f"expected 'v=<hex>,m=<hex>', got {text!r}")
    words = []
    offset = 0
    for field, key in zip(fields, ("v", "m")):
        prefix = key + "="
        if not field.startswith(prefix):
            raise ParseError(f"expected '{prefix}...'", position=offset)
        digits = field[len(prefix):]
        try:
            words.append(int(digits, 16))
        except ValueError:
            raise ParseError(f"invalid hex literal {digits!r}",
                             position=offset + len(prefix)) from None
        if words[-1] < 0:
            raise ParseError(f"negative hex literal {digits!r}",
                             position=offset + len(prefix))
        offset += len(field) + 1
    return Tnum(words[0], words[1], width)


def format(t: Tnum) -> str:            # noqa: A001 - deliberate domain term
    """Canonical trit string, MSB first, with 'x' for unknown bits."""
    return "".join(str(trit_at(t, k)) for k in range(t.width - 1, -1, -1))


def format_hex(t: Tnum) -> str:
    """The ``v=0x..,m=0x..`` form (lowercase hex)."""
    return f"v={t.value:#x},m={t.mask:#x}"


def enumerate_tnums(width: int) -> Iterator[Tnum]:
    """All 3**width well-formed tnums, in canonical base-3 order.

    Index ``i`` maps to the tnum whose trit at position ``k`` is the k-th
    base-3 digit of ``i`` (0 -> known 0, 1 -> known 1, 2 -> unknown).  Every
    enumeration-based sweep in this package iterates in this order, which is
    what makes reports and first-witness selection deterministic.
    """
    _check_width(width)
    if width > ENUM_WIDTH_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"refusing to enumerate 3**{width} tnums (limit {ENUM_WIDTH_LIMIT})")
    for i in range(3 ** width):
        value = mask = 0
        digits = i
        for k in range(width):
            digits, d = divmod(digits, 3)
            if d == 1:
                value |= 1 << k
            elif d == 2:
                mask |= 1 << k
        yield Tnum(value, mask, width)
