"""A map that is H-monogenic but neither right- nor left-G-monogenic."""

from ..frame import EXAMPLE_FRAME, Frame
from .maps import ExprComponentMap

EXAMPLE_COMPONENTS = ("exp(xi1)+xi2^2", "xi1*sin(xi2)", "xi2^2", "exp(xi1)")


def example_map(frame: Frame = EXAMPLE_FRAME) -> ExprComponentMap:
    """h = (e^xi1 + xi2^2) e1 + xi1 sin(xi2) e2 + xi2^2 e3 + e^xi1 e4."""
    return ExprComponentMap(frame, EXAMPLE_COMPONENTS)
