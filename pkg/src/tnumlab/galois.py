"""Concretization, abstraction, and the brute-force optimal-operator oracle.

``gamma`` expands a tnum into the set of concrete words it covers and
``alpha`` folds a concrete set into the most precise covering tnum
(bitwise AND of the members for the value, AND xor OR for the mask).  Their
composition around a concrete operator, ``alpha(f(gamma(P), gamma(Q)))``,
is the most precise sound abstract operator possible, and every transfer
function in this package is judged against it.

Everything here enumerates concrete sets, so it is deliberately guarded by
hard width limits: the oracle must never silently approximate.  The fast
sweeps live in the compiled backend; this module is the readable reference
they are cross-checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .core import (
    EmptySet, Order, Tnum, WidthMismatch, WidthRange,
    WidthTooLargeForEnumeration, compare, enumerate_tnums, word_mask,
)

__all__ = [
    "ConcreteSet", "ConcreteOp", "CONCRETE_OPS",
    "gamma", "alpha", "concrete_image", "concrete_image_unary",
    "optimal_abstract", "optimal_abstract_unary", "subset",
    "check_alpha_monotonic", "check_gamma_monotonic", "check_extensive",
    "check_reductive_exact", "check_bitwise_exact", "check_value_is_min",
]

GAMMA_WIDTH_LIMIT = 16
IMAGE_WIDTH_LIMIT = 12


@dataclass(frozen=True, slots=True)
class ConcreteSet:
    """A nonempty set of n-bit words, stored as a bitset over 0..2**width-1."""

    width: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= GAMMA_WIDTH_LIMIT:
            raise WidthRange(
                f"concrete sets support widths 1..{GAMMA_WIDTH_LIMIT}")
        if self.bits == 0:
            raise EmptySet("concrete set must be nonempty")
        if self.bits >> (1 << self.width):
            raise WidthRange("bitset has members above the width")

    @classmethod
    def of(cls, members: Iterable[int], width: int) -> "ConcreteSet":
        bits = 0
        for x in members:
            if not 0 <= x < (1 << width):
                raise WidthRange(f"{x:#x} does not fit in {width} bits")
            bits |= 1 << x
        return cls(width, bits)

    def members(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __contains__(self, x: int) -> bool:
        return 0 <= x < (1 << self.width) and (self.bits >> x) & 1 == 1

    def __len__(self) -> int:
        return self.bits.bit_count()


@dataclass(frozen=True, slots=True)
class ConcreteOp:
    """A total, deterministic concrete operator computed modulo 2**width."""

    name: str
    fn: Callable[[int, int, int], int]

    def __call__(self, x: int, y: int, width: int) -> int:
        return self.fn(x, y, width)


CONCRETE_OPS = {
    "add": ConcreteOp("add", lambda x, y, w: (x + y) & word_mask(w)),
    "sub": ConcreteOp("sub", lambda x, y, w: (x - y) & word_mask(w)),
    "mul": ConcreteOp("mul", lambda x, y, w: (x * y) & word_mask(w)),
    "and": ConcreteOp("and", lambda x, y, w: x & y),
    "or": ConcreteOp("or", lambda x, y, w: x | y),
    "xor": ConcreteOp("xor", lambda x, y, w: x ^ y),
}


def gamma(t: Tnum) -> ConcreteSet:
    """The set of words matching the known bits of ``t``."""
    if t.width > GAMMA_WIDTH_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"gamma enumerates up to width {GAMMA_WIDTH_LIMIT}, got {t.width}")
    bits = 0
    sub = 0
    # Walk every subset of the mask; value | subset ranges over the members.
    while True:
        bits |= 1 << (t.value | sub)
        sub = (sub - t.mask) & t.mask
        if sub == 0:
            break
    return ConcreteSet(t.width, bits)


def alpha(s: ConcreteSet) -> Tnum:
    """The most precise tnum covering ``s``."""
    acc_and = word_mask(s.width)
    acc_or = 0
    for x in s.members():
        acc_and &= x
        acc_or |= x
    return Tnum(acc_and, acc_and ^ acc_or, s.width)


def subset(a: ConcreteSet, b: ConcreteSet) -> bool:
    if a.width != b.width:
        raise WidthMismatch(f"subset on widths {a.width} and {b.width}")
    return a.bits & ~b.bits == 0


def _check_image_widths(p: Tnum, q: Tnum) -> None:
    if p.width != q.width:
        raise WidthMismatch(f"image on widths {p.width} and {q.width}")
    if p.width > IMAGE_WIDTH_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"pairwise images enumerate up to width {IMAGE_WIDTH_LIMIT}")


def concrete_image(f: ConcreteOp, p: Tnum, q: Tnum) -> ConcreteSet:
    """{ f(x, y) | x in gamma(p), y in gamma(q) }."""
    _check_image_widths(p, q)
    width = p.width
    bits = 0
    for x in gamma(p).members():
        for y in gamma(q).members():
            bits |= 1 << f(x, y, width)
    return ConcreteSet(width, bits)


def concrete_image_unary(f: Callable[[int, int], int], p: Tnum) -> ConcreteSet:
    """{ f(x, width) | x in gamma(p) } for unary concrete semantics."""
    if p.width > IMAGE_WIDTH_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"images enumerate up to width {IMAGE_WIDTH_LIMIT}")
    bits = 0
    for x in gamma(p).members():
        bits |= 1 << f(x, p.width)
    return ConcreteSet(p.width, bits)


def optimal_abstract(f: ConcreteOp, p: Tnum, q: Tnum) -> Tnum:
    """The maximally precise abstraction of ``f`` applied to (p, q)."""
    return alpha(concrete_image(f, p, q))


def optimal_abstract_unary(f: Callable[[int, int], int], p: Tnum) -> Tnum:
    return alpha(concrete_image_unary(f, p))


# ---------------------------------------------------------------------------
# Connection properties.  Each check returns a list of violation strings;
# empty means the property held on the swept domain.

def _nonempty_subsets(bits: int) -> Iterator[int]:
    sub = bits
    while sub:
        yield sub
        sub = (sub - 1) & bits


def check_alpha_monotonic(width: int, samples: int = 2000,
                          seed: int = 0) -> list[str]:
    """C1 <= C2 implies alpha(C1) refines-or-equals alpha(C2).

    Exhaustive over all nonempty ``C1 <= C2`` at width <= 3; at larger
    widths, ``samples`` random pairs are drawn instead.
    """
    violations = []

    def check_pair(bits1: int, bits2: int) -> None:
        a1 = alpha(ConcreteSet(width, bits1))
        a2 = alpha(ConcreteSet(width, bits2))
        if compare(a1, a2) not in (Order.EQUAL, Order.LEFT_MORE_PRECISE):
            violations.append(
                f"alpha not monotonic: C1={bits1:#x} C2={bits2:#x}")

    if width <= 3:
        for bits2 in range(1, 1 << (1 << width)):
            for bits1 in _nonempty_subsets(bits2):
                check_pair(bits1, bits2)
    else:
        import random
        rng = random.Random(seed)
        space = 1 << (1 << width)
        for _ in range(samples):
            bits2 = rng.randrange(1, space)
            sub = rng.randrange(space) & bits2
            bits1 = sub if sub else bits2
            check_pair(bits1, bits2)
    return violations


def check_gamma_monotonic(width: int) -> list[str]:
    """P refines Q implies gamma(P) <= gamma(Q), over all comparable pairs."""
    if width > 8:
        raise WidthTooLargeForEnumeration("gamma monotonicity sweep: width <= 8")
    sets = [gamma(t).bits for t in enumerate_tnums(width)]
    # Per-trit digit pairs (a, b) with a refining b: identical trits, or a
    # known trit under an unknown one.
    trit_pairs = [(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)]
    violations = []
    total = len(trit_pairs) ** width
    for combo in range(total):
        ia = ib = 0
        c = combo
        pow3 = 1
        for _ in range(width):
            c, choice = divmod(c, len(trit_pairs))
            da, db = trit_pairs[choice]
            ia += da * pow3
            ib += db * pow3
            pow3 *= 3
        if sets[ia] & ~sets[ib]:
            violations.append(f"gamma not monotonic: indices {ia}, {ib}")
    return violations


def check_extensive(width: int) -> list[str]:
    """Every nonempty C is contained in gamma(alpha(C))."""
    if width > 4:
        raise WidthTooLargeForEnumeration("extensivity sweep: width <= 4")
    violations = []
    for bits in range(1, 1 << (1 << width)):
        s = ConcreteSet(width, bits)
        if not subset(s, gamma(alpha(s))):
            violations.append(f"gamma(alpha(C)) misses members of C={bits:#x}")
    return violations


def check_reductive_exact(width: int) -> list[str]:
    """alpha(gamma(T)) == T exactly, for every well-formed T."""
    if width > 8:
        raise WidthTooLargeForEnumeration("reductivity sweep: width <= 8")
    violations = []
    for t in enumerate_tnums(width):
        back = alpha(gamma(t))
        if back != t:
            violations.append(f"alpha(gamma({t})) = {back} != {t}")
    return violations


def check_bitwise_exact(width: int) -> list[str]:
    """Trit k of alpha(C) is unknown iff two members of C differ at bit k."""
    if width > 4:
        raise WidthTooLargeForEnumeration("bitwise exactness sweep: width <= 4")
    violations = []
    for bits in range(1, 1 << (1 << width)):
        s = ConcreteSet(width, bits)
        a = alpha(s)
        for k in range(width):
            seen = {(x >> k) & 1 for x in s.members()}
            if (len(seen) == 2) != bool((a.mask >> k) & 1):
                violations.append(
                    f"alpha bit {k} wrong for C={bits:#x}: {a}")
    return violations


def check_value_is_min(width: int) -> list[str]:
    """t.value is the smallest member of gamma(t)."""
    if width > 8:
        raise WidthTooLargeForEnumeration("min-member sweep: width <= 8")
    violations = []
    for t in enumerate_tnums(width):
        if min(gamma(t).members()) != t.value:
            violations.append(f"min(gamma({t})) != value")
    return violations
