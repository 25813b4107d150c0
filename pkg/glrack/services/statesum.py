"""Cocycle state sums of oriented fronts with values in Z[Z_m]."""
import logging
from collections import Counter

from glrack.errors import DomainError
from glrack.models import GroupRingElement
from glrack.services.algebra import left_division_table
from glrack.services.diagram import crossing_signs
from glrack.services.homology import add_coboundary, make_cocycle
from glrack.services.presentation import coloring_weights, iter_colorings

logger = logging.getLogger(__name__)


def _weight(phi, division, sign, x, y):
    if sign > 0:
        return phi.value(x, y) % phi.modulus
    return -phi.value(division[x][y], y) % phi.modulus


def boltzmann_weight(crossing, coloring, phi, R):
    """Weight of one crossing under a coloring, additively in Z_m.

    phi(x, y) at a positive crossing and -phi(x *^-1 y, y) at a negative one,
    where x colors the incoming under-arc and y the over-arc.
    """
    x = coloring[crossing.under_in]
    y = coloring[crossing.over_in]
    return _weight(phi, left_division_table(R.rack), crossing.sign, x, y)


def state_sum(diagram, R, phi, method='transfer'):
    """Sum over colorings of t^(total weight).

    Args:
        diagram: Oriented FrontDiagram
        R: FiniteGLRack
        phi: Cocycle2 over Z_m; checked against conditions (1)-(6)
        method: 'transfer' (left-to-right count) or 'enumerate' (every coloring)

    Returns:
        GroupRingElement with total multiplicity equal to the coloring count
    """
    phi = make_cocycle(R, phi.modulus, phi.table)
    division = left_division_table(R.rack)
    m = phi.modulus
    if method == 'transfer':
        counts = coloring_weights(diagram, R, lambda sign, x, y: _weight(phi, division, sign, x, y), m)
    elif method == 'enumerate':
        crossings = crossing_signs(diagram)
        counts = Counter()
        for coloring in iter_colorings(diagram, R):
            total = 0
            for c in crossings:
                total += _weight(phi, division, c.sign, coloring[c.under_in], coloring[c.over_in])
            counts[total % m] += 1
    else:
        raise DomainError(f'unknown state-sum method {method!r}')
    result = GroupRingElement.from_counts(m, counts)
    logger.debug(f'state sum over {result.total} colorings: {result}')
    return result


def state_sum_equal(a, b):
    """Multiset equality of two state-sum values.

    Raises:
        DomainError: the moduli differ
    """
    if a.modulus != b.modulus:
        raise DomainError(f'cannot compare state sums over Z_{a.modulus} and Z_{b.modulus}')
    return a.terms == b.terms


def cohomologous_invariance_check(diagram, R, phi, lam):
    """True iff phi and phi + delta(lam) give the same state sum."""
    shifted = add_coboundary(R, phi, lam)
    return state_sum_equal(state_sum(diagram, R, phi), state_sum(diagram, R, shifted))
