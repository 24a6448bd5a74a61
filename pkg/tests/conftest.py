import random

import pytest

from tnumlab.core import Tnum


def random_tnum(width: int, rng: random.Random) -> Tnum:
    value = mask = 0
    for k in range(width):
        d = rng.randrange(3)
        if d == 1:
            value |= 1 << k
        elif d == 2:
            mask |= 1 << k
    return Tnum(value, mask, width)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
