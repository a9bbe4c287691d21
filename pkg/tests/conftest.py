from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def F(x):
    return Fraction(x)


def V(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture
def say(capsys):
    """Print straight to the terminal, past pytest's capture."""
    def _say(line):
        with capsys.disabled():
            print(line)
    return _say
