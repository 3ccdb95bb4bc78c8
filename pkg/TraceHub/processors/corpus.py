"""Shipped worked examples: shear (Case I), Case II and the fixed-point-free identity homotopy."""
from algebra.group_algebra import Endomorphism, GroupElement, RingElement
from processors.trace_engine import complete_cellular_data, cycle_obstruction_classes, fixed_point_free_example

SHEAR = Endomorphism.from_rows([[1, 1], [0, 1]])
DIAGONAL_3_2 = Endomorphism.from_rows([[3, 0], [0, 2]])


def _ring(*terms):
    """Ring element from (coeff, m, n) triples."""
    return RingElement((GroupElement(m, n), c) for c, m, n in terms)


def _with_obstructions_excluded(phi, D0, D1):
    data = complete_cellular_data(phi, D0, D1)
    return complete_cellular_data(phi, D0, D1, data.F0, cycle_obstruction_classes(phi, data))


def shear_example():
    """
    phi = [[1,1],[0,1]] with D0 = (u, 0) and D1 = (v^2, 1 + u + v).
    Two circles through the classes of u and uv, one boundary arc in the
    class of v^3 (excluded) and a trivial 1 (x) v^2 term.
    """
    D0 = (_ring((1, 1, 0)), RingElement())
    D1 = (_ring((1, 0, 2)), _ring((1, 0, 0), (1, 1, 0), (1, 0, 1)))
    return SHEAR, _with_obstructions_excluded(SHEAR, D0, D1)


def case_two_example():
    """phi = [[3,0],[0,2]], det([phi]-I) = 2: the u (x) 1 arc is excluded, -1 (x) 1 is a boundary."""
    D0 = (RingElement(), RingElement())
    D1 = (RingElement(), _ring((1, 0, 0)))
    return DIAGONAL_3_2, _with_obstructions_excluded(DIAGONAL_3_2, D0, D1)


def example_corpus():
    """Name -> (phi, data) for every shipped example, in a fixed order."""
    return {
        "shear": shear_example(),
        "fixed_point_free": fixed_point_free_example(),
        "case_two": case_two_example(),
    }
