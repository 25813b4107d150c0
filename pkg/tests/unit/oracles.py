"""Brute-force reference computations used to cross-check the services."""
import itertools
from collections import Counter
from math import gcd, prod

import numpy as np
from sympy import ZZ, zeros
from sympy.matrices.normalforms import smith_normal_form

from glrack.services.algebra import left_division_table
from glrack.services.diagram import classify_cusps, crossing_signs, trace
from glrack.services.presentation import gl_presentation, underlying_quandle_presentation


def all_colorings(diagram, R):
    """Every segment coloring satisfying the crossing and cusp rules, by trying all maps."""
    strands = trace(diagram)
    crossings = crossing_signs(diagram, strands)
    cusps = classify_cusps(diagram, strands)
    division = left_division_table(R.rack)
    found = []
    for colors in itertools.product(range(R.n), repeat=len(strands.segments)):
        ok = True
        for c in crossings:
            x, y = colors[c.under_in], colors[c.over_in]
            expected = R.op(x, y) if c.sign > 0 else division[x][y]
            if colors[c.over_out] != y or colors[c.under_out] != expected:
                ok = False
                break
        if ok:
            for c in cusps:
                f = R.u if c.tag == 'up' else R.d
                if f[colors[c.incoming]] != colors[c.outgoing]:
                    ok = False
                    break
        if ok:
            found.append(colors)
    return found


def direct_state_sum(diagram, R, phi):
    """Counter of total weight mod m over all colorings found by all_colorings."""
    crossings = crossing_signs(diagram)
    division = left_division_table(R.rack)
    m = phi.modulus
    totals = Counter()
    for colors in all_colorings(diagram, R):
        total = 0
        for c in crossings:
            x, y = colors[c.under_in], colors[c.over_in]
            total += phi.value(x, y) if c.sign > 0 else -phi.value(division[x][y], y)
        totals[total % m] += 1
    return totals


def all_gl_structures(rack):
    """Every pair (u, d) of permutations passing (L1)-(L3') read straight off the table."""
    n = rack.n
    op = rack.op
    perms = list(itertools.permutations(range(n)))
    found = []
    for u in perms:
        for d in perms:
            if any(u[d[op(x, x)]] != x or d[u[op(x, x)]] != x for x in range(n)):
                continue
            if any(u[op(x, y)] != op(u[x], y) or d[op(x, y)] != op(d[x], y)
                   or op(x, u[y]) != op(x, y) or op(x, d[y]) != op(x, y)
                   for x in range(n) for y in range(n)):
                continue
            found.append((u, d))
    return found


def _full_boundary(R, n):
    N = R.n
    if n == 1:
        return np.zeros((0, N))
    index = {t: i for i, t in enumerate(itertools.product(range(N), repeat=n - 1))}
    M = np.zeros((N ** (n - 1), N ** n))
    for j, t in enumerate(itertools.product(range(N), repeat=n)):
        for i in range(1, n):
            sign = 1 if i % 2 else -1
            rest = t[i + 1:]
            M[index[t[:i] + rest], j] += sign
            M[index[tuple(R.op(x, t[i]) for x in t[:i]) + rest], j] -= sign
    return M


def _degenerate(R, n):
    N = R.n
    index = {t: i for i, t in enumerate(itertools.product(range(N), repeat=n))}
    columns = []
    for t in index:
        for i in range(n):
            for f in (R.u, R.d):
                moved = t[:i] + (f[t[i]],) + t[i + 1:]
                if moved != t:
                    v = np.zeros(N ** n)
                    v[index[t]] += 1
                    v[index[moved]] -= 1
                    columns.append(v)
        if any(t[i] == t[i + 1] for i in range(n - 1)):
            v = np.zeros(N ** n)
            v[index[t]] = 1
            columns.append(v)
    if not columns:
        return np.zeros((N ** n, 0))
    return np.stack(columns, axis=1)


def _rank(M):
    return int(np.linalg.matrix_rank(M)) if M.size else 0


def rational_betti(R, n):
    """Rank of H_n^L(R) from real ranks of the full complex and its degenerate part."""
    size = R.n ** n
    d_n = _full_boundary(R, n)
    d_next = _full_boundary(R, n + 1)
    D_n = _degenerate(R, n)
    if n == 1:
        cycles = size
    else:
        D_prev = _degenerate(R, n - 1)
        cycles = size - (_rank(np.hstack([d_n, D_prev])) - _rank(D_prev))
    return cycles - _rank(np.hstack([D_n, d_next]))


def uct_order(integral, previous, m):
    """Order of H_n (x) Z_m + Tor(H_{n-1}, Z_m)."""
    orders = [m] * integral.rank + [gcd(d, m) for d in integral.torsion] + [gcd(d, m) for d in previous.torsion]
    return prod(orders)


def _nondegenerate(N, n):
    return [t for t in itertools.product(range(N), repeat=n) if all(t[i] != t[i + 1] for i in range(n - 1))]


def _quandle_boundary(rack, n):
    """Boundary C_n -> C_(n-1) of the quandle complex, on tuples without equal neighbours."""
    rows = _nondegenerate(rack.n, n - 1) if n > 1 else []
    cols = _nondegenerate(rack.n, n)
    index = {t: i for i, t in enumerate(rows)}
    M = zeros(len(rows), len(cols))
    for j, t in enumerate(cols):
        for i in range(1, n):
            sign = (-1) ** (i + 1)
            for face, s in ((t[:i] + t[i + 1:], sign), (tuple(rack.op(x, t[i]) for x in t[:i]) + t[i + 1:], -sign)):
                if face in index:
                    M[index[face], j] += s
    return M


def _snf_diagonal(M):
    if 0 in M.shape:
        return []
    D = smith_normal_form(M, domain=ZZ)
    return [abs(int(D[i, i])) for i in range(min(M.shape)) if D[i, i] != 0]


def quandle_homology(rack, n):
    """(rank, sorted torsion) of the quandle homology H_n^Q of a finite quandle.

    Tuples with two equal neighbours span a subcomplex, so the quotient complex
    is free on the remaining tuples and its boundary drops every degenerate face.
    """
    size = len(_nondegenerate(rack.n, n))
    d_n = _snf_diagonal(_quandle_boundary(rack, n)) if n > 1 else []
    d_next = _snf_diagonal(_quandle_boundary(rack, n + 1))
    return size - len(d_n) - len(d_next), sorted(d for d in d_next if d > 1)


def quandle_state_sum(diagram, R, phi):
    """Counter of total weight mod m over the arc colorings of the topological diagram.

    Arcs are the generators left after erasing u and d; every remaining relation
    is a crossing ``a *^s b = c``. A positive crossing weighs phi(a, b) and a
    negative one -phi(c, b), the under-arc that b carries onto the other.
    """
    P = underlying_quandle_presentation(gl_presentation(diagram))
    crossings = []
    for rel in P.relations:
        assert rel.tag == 'crossing'
        crossings.append((rel.lhs.left.name, rel.lhs.right.name, rel.rhs.name, rel.lhs.sign))
    m = phi.modulus
    totals = Counter()
    for values in itertools.product(range(R.n), repeat=len(P.generators)):
        color = dict(zip(P.generators, values))
        total = 0
        for a, b, c, s in crossings:
            x, y, z = color[a], color[b], color[c]
            if s > 0 and R.op(x, y) == z:
                total += phi.value(x, y)
            elif s < 0 and R.op(z, y) == x:
                total -= phi.value(z, y)
            else:
                break
        else:
            totals[total % m] += 1
    return totals
