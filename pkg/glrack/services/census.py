"""Enumeration of small racks and GL-racks up to isomorphism."""
import itertools
import logging

from glrack.errors import DomainError
from glrack.models import FiniteGLRack, FiniteRack
from glrack.services.algebra import compose, enumerate_gl_structures, invert
from glrack.utils.settings import check_order

logger = logging.getLogger(__name__)


def _canonical_key(table, u, d, perms):
    """Least relabelled (table, u, d) over all relabellings."""
    n = len(table)
    best = None
    for p in perms:
        inv = invert(p)
        key = (
            tuple(p[table[inv[a]][inv[b]]] for a in range(n) for b in range(n)),
            compose(p, compose(u, inv)),
            compose(p, compose(d, inv))
        )
        if best is None or key < best:
            best = key
    return best


def _distributive_so_far(columns, n):
    """Check S_z S_y = S_{S_z(y)} S_z wherever every column involved is known."""
    assigned = len(columns)
    for z in range(assigned):
        Sz = columns[z]
        for y in range(assigned):
            target = Sz[y]
            if target >= assigned:
                continue
            if compose(Sz, columns[y]) != compose(columns[target], Sz):
                return False
    return True


def _rack_tables(n):
    """Every rack table of order n, as column permutations, by backtracking."""
    perms = list(itertools.permutations(range(n)))

    def extend(columns):
        if len(columns) == n:
            yield tuple(tuple(columns[y][x] for y in range(n)) for x in range(n))
            return
        for p in perms:
            columns.append(p)
            if _distributive_so_far(columns, n):
                yield from extend(columns)
            columns.pop()

    yield from extend([])


def enumerate_racks(n, cap=None):
    """All racks of order n up to isomorphism, in canonical-table order.

    Args:
        n: Order (n >= 1)
        cap: Order cap; defaults to ORDER_CAP

    Returns:
        List of FiniteRack
    """
    if n < 1:
        raise DomainError('order must be positive')
    check_order(n, cap)
    perms = list(itertools.permutations(range(n)))
    ident = tuple(range(n))
    seen = {}
    for table in _rack_tables(n):
        key = _canonical_key(table, ident, ident, perms)
        seen.setdefault(key, None)
    racks = [FiniteRack([key[0][a * n:(a + 1) * n] for a in range(n)]) for key in sorted(seen)]
    logger.info(f'{len(racks)} racks of order {n}')
    return racks


def enumerate_gl_racks(n, cap=None):
    """All GL-racks of order n up to GL-isomorphism."""
    perms = list(itertools.permutations(range(n)))
    seen = set()
    result = []
    for rack in enumerate_racks(n, cap):
        for u, d in enumerate_gl_structures(rack, cap=cap):
            key = _canonical_key(rack.table, u, d, perms)
            if key in seen:
                continue
            seen.add(key)
            result.append(FiniteGLRack(rack, u, d))
    logger.info(f'{len(result)} GL-racks of order {n}')
    return result
