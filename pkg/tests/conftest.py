import random
from fractions import Fraction

import pytest

from biquat import Biquaternion, QQi


def rand_fraction(rng, span=6):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))

def rand_qqi(rng, span=6):
    return QQi(rand_fraction(rng, span), rand_fraction(rng, span))

def rand_biquat(rng, span=6):
    return Biquaternion(*(rand_qqi(rng, span) for _ in range(4)))

def rand_quaternion(rng, span=6):
    """A random point of the e0..e3 real span (real rational components)."""
    return Biquaternion.from_components(*(rand_fraction(rng, span) for _ in range(4)))

def rand_minkowski(rng, span=6):
    return Biquaternion.from_minkowski(*(rand_fraction(rng, span) for _ in range(4)))


@pytest.fixture
def rng():
    return random.Random(20260818)
