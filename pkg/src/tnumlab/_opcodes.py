"""Integer opcodes shared by the compiled and pure-Python backends."""

ADD = 0
SUB = 1
AND = 2
OR = 3
XOR = 4
LSHIFT = 5
RSHIFT = 6
ARSH = 7
KERN_MUL = 8
BITWISE_MUL = 9
BITWISE_MUL_OPT = 10
OUR_MUL = 11
OUR_MUL_SIMPLIFIED = 12

NAMES = {
    ADD: "add", SUB: "sub", AND: "and", OR: "or", XOR: "xor",
    LSHIFT: "lshift", RSHIFT: "rshift", ARSH: "arsh",
    KERN_MUL: "kern_mul", BITWISE_MUL: "bitwise_mul",
    BITWISE_MUL_OPT: "bitwise_mul_opt", OUR_MUL: "our_mul",
    OUR_MUL_SIMPLIFIED: "our_mul_simplified",
}

SHIFT_OPS = frozenset((LSHIFT, RSHIFT, ARSH))
BINARY_OPS = frozenset(NAMES) - SHIFT_OPS
MUL_OPS = frozenset((KERN_MUL, BITWISE_MUL, BITWISE_MUL_OPT,
                     OUR_MUL, OUR_MUL_SIMPLIFIED))
