"""Legendrian (co)homology of finite GL-racks.

The chain group C_n^L is the quotient of the free abelian group on X^n by the
degenerate subcomplex. That subcomplex is spanned by the differences
t - t' where t' replaces one coordinate by its image under u or d, together
with the tuples having two equal adjacent entries. The quotient is therefore
free on the classes of the coordinatewise <u, d>-action that contain no such
tuple; see docs/HOMOLOGY.md.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from sympy import Matrix, eye, zeros

from glrack.errors import DomainError, ResourceError
from glrack.models import AbGroupInvariants, Cocycle2
from glrack.services.algebra import ud_orbits
from glrack.services.linalg import (
    as_matrix,
    integer_kernel,
    invariant_factors,
    lattice_basis,
    matrix_rank,
    quotient,
    smith_normal_form,
    solve_mod,
    span_mod,
)
from glrack.utils.settings import resolve_cap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TupleClassIndex:
    """Classes of X^n under coordinatewise u and d.

    A class is the product of the <u, d>-orbits of its coordinates and is keyed by
    the tuple of orbit ids. It is degenerate when two adjacent coordinates lie in
    the same orbit, i.e. when some member has x_i = x_{i+1}.
    """
    degree: int
    orbits: tuple
    orbit_of: tuple
    basis: tuple
    position: dict = field(compare=False, repr=False)

    def class_of(self, t):
        return tuple(self.orbit_of[x] for x in t)

    @staticmethod
    def is_degenerate(key):
        return any(key[i] == key[i + 1] for i in range(len(key) - 1))

    def classes(self):
        return itertools.product(range(len(self.orbits)), repeat=self.degree)

    def representative(self, key):
        return tuple(self.orbits[o][0] for o in key)

    def members(self, key):
        return itertools.product(*(self.orbits[o] for o in key))

    def index_of(self, t):
        """Basis position of the class of t, or None when the class is degenerate."""
        return self.position.get(self.class_of(t))

    @property
    def rank(self):
        return len(self.basis)


@dataclass(frozen=True)
class ChainData:
    """Class bases and boundary matrices of the quotient complex in degrees 1..top."""
    bases: dict
    boundaries: dict

    def check_square_zero(self):
        for n in self.boundaries:
            if n - 1 in self.boundaries:
                product = self.boundaries[n - 1] * self.boundaries[n]
                if any(v != 0 for v in product):
                    return False
        return True


def _check_tuples(R, n, cap):
    cap = resolve_cap(cap, 'TUPLE_CAP')
    if R.n ** n > cap:
        raise ResourceError(f'{R.n}^{n} tuples exceed the cap {cap} (set GLR_TUPLE_CAP to raise it)')


def tuple_classes(R, n, cap=None):
    """TupleClassIndex of degree n.

    Raises:
        ResourceError: |X|^n exceeds TUPLE_CAP
    """
    if n < 1:
        raise DomainError(f'degree must be at least 1, got {n}')
    _check_tuples(R, n, cap)
    blocks = ud_orbits(R)
    orbit_of = [0] * R.n
    for k, block in enumerate(blocks):
        for x in block:
            orbit_of[x] = k
    basis = tuple(key for key in itertools.product(range(len(blocks)), repeat=n)
                  if not TupleClassIndex.is_degenerate(key))
    return TupleClassIndex(n, tuple(blocks), tuple(orbit_of), basis, {key: i for i, key in enumerate(basis)})


def tuple_boundary(R, t):
    """Boundary of the tuple t in the full rack complex, as a Counter of tuples."""
    out = Counter()
    n = len(t)
    for i in range(1, n):
        sign = 1 if i % 2 else -1
        rest = t[i + 1:]
        out[t[:i] + rest] += sign
        out[tuple(R.op(x, t[i]) for x in t[:i]) + rest] -= sign
    return Counter({k: v for k, v in out.items() if v})


def _project(R, index, t):
    column = Counter()
    for s, v in tuple_boundary(R, t).items():
        row = index.index_of(s)
        if row is not None:
            column[row] += v
    return {row: v for row, v in column.items() if v}


def boundary_matrix(R, n, cap=None, check=True):
    """Matrix of the boundary C_n^L -> C_{n-1}^L in the class bases.

    With ``check`` every member of every class is verified to have the same
    projected boundary (zero for degenerate classes).

    Raises:
        DomainError: the boundary is not constant on some class
    """
    source = tuple_classes(R, n, cap)
    if n == 1:
        return zeros(0, source.rank)
    target = tuple_classes(R, n - 1, cap)
    M = zeros(target.rank, source.rank)
    for j, key in enumerate(source.basis):
        column = _project(R, target, source.representative(key))
        for row, v in column.items():
            M[row, j] = v
        if check:
            for member in source.members(key):
                if _project(R, target, member) != column:
                    raise DomainError(f'boundary is not constant on the class of {member}', witness=member)
    if check:
        for key in source.classes():
            if not source.is_degenerate(key):
                continue
            for member in source.members(key):
                if _project(R, target, member):
                    raise DomainError(f'degenerate tuple {member} has a nonzero boundary class', witness=member)
    return M


def chain_data(R, top, cap=None):
    """ChainData for degrees 1..top."""
    bases = {n: tuple_classes(R, n, cap) for n in range(1, top + 1)}
    boundaries = {n: boundary_matrix(R, n, cap) for n in range(1, top + 1)}
    return ChainData(bases, boundaries)


def _cyclic_sum(orders):
    """Invariants of the direct sum of cyclic groups Z/o (o = 0 meaning Z)."""
    rank = sum(1 for o in orders if o == 0)
    finite = [o for o in orders if o > 1]
    if not finite:
        return AbGroupInvariants((), rank)
    diagonal = Matrix.diag(*finite)
    return AbGroupInvariants(tuple(d for d in invariant_factors(diagonal) if d > 1), rank)


def _check_modulus(m):
    if m < 0 or m == 1:
        raise DomainError(f'coefficient modulus must be 0 or at least 2, got {m}')


def legendrian_homology(R, n, m=0, cap=None):
    """H_n^L(R; Z) for m = 0, H_n^L(R; Z_m) for m >= 2.

    With Z_m coefficients the result is H_n (x) Z_m + Tor(H_{n-1}, Z_m).
    """
    _check_modulus(m)
    if n < 1:
        raise DomainError(f'degree must be at least 1, got {n}')
    d_n = boundary_matrix(R, n, cap)
    d_next = boundary_matrix(R, n + 1, cap)
    form = smith_normal_form(d_next)
    integral = AbGroupInvariants(tuple(d for d in form.factors if d > 1), d_n.shape[1] - matrix_rank(d_n) - form.rank)
    logger.debug(f'H_{n} of order {R.n}: {integral}')
    if m == 0:
        return integral
    previous = legendrian_homology(R, n - 1, 0, cap) if n > 1 else AbGroupInvariants()
    orders = [m] * integral.rank
    orders += [gcd(d, m) for d in integral.torsion]
    orders += [gcd(d, m) for d in previous.torsion]
    return _cyclic_sum(orders)


def legendrian_cohomology(R, n, m=0, cap=None):
    """H^n_L(R; Z) or H^n_L(R; Z_m), from the dual of the quotient complex."""
    _check_modulus(m)
    if n < 1:
        raise DomainError(f'degree must be at least 1, got {n}')
    d_n = boundary_matrix(R, n, cap)
    d_next = boundary_matrix(R, n + 1, cap)
    delta_prev = d_n.T
    delta = d_next.T
    width = delta_prev.shape[0]
    if width == 0:
        return AbGroupInvariants()
    if m == 0:
        torsion = tuple(d for d in invariant_factors(delta_prev) if d > 1)
        return AbGroupInvariants(torsion, width - matrix_rank(delta_prev) - matrix_rank(delta))

    identity = eye(width)
    if delta.shape[0] == 0:
        cocycles = [identity[:, j] for j in range(width)]
    else:
        stacked = delta.row_join(m * eye(delta.shape[0]))
        cocycles = [v[:width, :] for v in integer_kernel(stacked)]
    basis = lattice_basis(cocycles, width)
    coboundaries = [delta_prev[:, j] for j in range(delta_prev.shape[1])]
    coboundaries += [m * identity[:, j] for j in range(width)]
    return quotient(basis, coboundaries)


# Explicit-span path


def _encode(t, n):
    code = 0
    for x in t:
        code = code * n + x
    return code


def _full_boundary(R, k):
    """Boundary Z^{X^k} -> Z^{X^(k-1)} in the lexicographic tuple bases."""
    N = R.n
    if k == 1:
        return zeros(0, N)
    M = zeros(N ** (k - 1), N ** k)
    for j, t in enumerate(itertools.product(range(N), repeat=k)):
        for s, v in tuple_boundary(R, t).items():
            M[_encode(s, N), j] += v
    return M


def _degenerate_generators(R, k):
    """Generators of the degenerate subcomplex in degree k as column vectors."""
    N = R.n
    size = N ** k
    gens = []
    for t in itertools.product(range(N), repeat=k):
        code = _encode(t, N)
        for i in range(k):
            for f in (R.u, R.d):
                image = t[:i] + (f[t[i]],) + t[i + 1:]
                if image != t:
                    v = zeros(size, 1)
                    v[code, 0] += 1
                    v[_encode(image, N), 0] -= 1
                    gens.append(v)
        if any(t[i] == t[i + 1] for i in range(k - 1)):
            v = zeros(size, 1)
            v[code, 0] = 1
            gens.append(v)
    return gens


def legendrian_homology_explicit(R, n, cap=None):
    """H_n^L(R; Z) by spanning the degenerate subcomplex inside Z^{X^n}.

    Cycles are the chains whose boundary is degenerate; the result is that
    lattice modulo the degenerate chains and the boundaries of degree n + 1.
    """
    if n < 1:
        raise DomainError(f'degree must be at least 1, got {n}')
    _check_tuples(R, n + 1, cap)
    size = R.n ** n
    d_n = _full_boundary(R, n)
    if n == 1:
        cycles = [eye(size)[:, j] for j in range(size)]
    else:
        lower = lattice_basis(_degenerate_generators(R, n - 1), R.n ** (n - 1))
        stacked = d_n.row_join(-lower) if lower.shape[1] else d_n
        cycles = [v[:size, :] for v in integer_kernel(stacked)]
    d_next = _full_boundary(R, n + 1)
    relations = _degenerate_generators(R, n) + [d_next[:, j] for j in range(d_next.shape[1])]
    relations = [v for v in relations if any(x != 0 for x in v)]
    return quotient(lattice_basis(cycles, size), relations)


# 2-cocycles


def _cocycle_equations(R, index):
    """One row per triple: phi(x1,x3) + phi(x1*x3, x2*x3) - phi(x1*x2, x3) - phi(x1, x2)."""
    rows = []
    seen = set()
    for x1, x2, x3 in itertools.product(range(R.n), repeat=3):
        row = Counter()
        for sign, pair in ((1, (x1, x3)), (1, (R.op(x1, x3), R.op(x2, x3))),
                           (-1, (R.op(x1, x2), x3)), (-1, (x1, x2))):
            pos = index.index_of(pair)
            if pos is not None:
                row[pos] += sign
        vector = tuple(row.get(j, 0) for j in range(index.rank))
        if any(vector) and vector not in seen:
            seen.add(vector)
            rows.append(list(vector))
    return rows


def _cocycle_from_vector(R, index, vector, m):
    table = [[0] * R.n for _ in range(R.n)]
    for x in range(R.n):
        for y in range(R.n):
            pos = index.index_of((x, y))
            if pos is not None:
                table[x][y] = vector[pos] % m
    return Cocycle2(m, table)


def cocycle_vector(index, phi):
    """Values of phi on the class representatives, in basis order."""
    return tuple(phi.value(*index.representative(key)) for key in index.basis)


def cocycle_space_2(R, m):
    """Generators of Z^2_L(R; Z_m) as Cocycle2 values (a basis when m is prime)."""
    if m < 2:
        raise DomainError(f'coefficient modulus must be at least 2, got {m}')
    index = tuple_classes(R, 2)
    equations = _cocycle_equations(R, index)
    gens = solve_mod(as_matrix(equations, index.rank), m, index.rank)
    logger.debug(f'{len(gens)} cocycle generators over Z_{m} on {index.rank} classes')
    return [_cocycle_from_vector(R, index, vector, m) for vector, _ in gens]


def coboundary_space_2(R, m):
    """Generators of B^2_L(R; Z_m): the coboundaries of the degree-1 class cochains.

    Raises:
        DomainError: a coboundary fails the cocycle equations
    """
    if m < 2:
        raise DomainError(f'coefficient modulus must be at least 2, got {m}')
    index = tuple_classes(R, 2)
    d_2 = boundary_matrix(R, 2)
    rows = [tuple(int(v) for v in d_2.row(i)) for i in range(d_2.shape[0])]
    gens = span_mod(rows, m, index.rank)
    equations = _cocycle_equations(R, index)
    for vector, _ in gens:
        for row in equations:
            if sum(a * b for a, b in zip(row, vector)) % m:
                raise DomainError('coboundary fails the cocycle condition', witness=vector)
    return [_cocycle_from_vector(R, index, vector, m) for vector, _ in gens]


def make_cocycle(R, m, values):
    """Validated Legendrian 2-cocycle.

    Args:
        R: FiniteGLRack
        m: Modulus >= 2
        values: Full n x n table, or a dict {(x, y): value}; dict entries spread
            over the <u, d>-class of (x, y) and missing classes are 0

    Raises:
        DomainError: conditions (1)-(6) fail; the message names the condition and witness
    """
    if m < 2:
        raise DomainError(f'coefficient modulus must be at least 2, got {m}')
    n = R.n
    if isinstance(values, dict):
        index = tuple_classes(R, 2)
        table = [[0] * n for _ in range(n)]
        assigned = {}
        for (x, y), v in values.items():
            key = index.class_of((x, y))
            if assigned.get(key, v % m) != v % m:
                raise DomainError(f'conflicting values on the class of ({x}, {y})', witness=(x, y))
            assigned[key] = v % m
        for x in range(n):
            for y in range(n):
                table[x][y] = assigned.get(index.class_of((x, y)), 0)
    else:
        table = [[int(v) % m for v in row] for row in values]
        if len(table) != n or any(len(row) != n for row in table):
            raise DomainError(f'cocycle table must be {n} x {n}')

    for x in range(n):
        if table[x][x]:
            raise DomainError(f'condition (2) fails at x={x}', witness=(x,))
    checks = (
        ('3', lambda x, y: (R.u[x], y)),
        ('4', lambda x, y: (x, R.u[y])),
        ('5', lambda x, y: (R.d[x], y)),
        ('6', lambda x, y: (x, R.d[y])),
    )
    for label, moved in checks:
        for x in range(n):
            for y in range(n):
                a, b = moved(x, y)
                if table[x][y] != table[a][b]:
                    raise DomainError(f'condition ({label}) fails at ({x}, {y})', witness=(x, y))
    for x1, x2, x3 in itertools.product(range(n), repeat=3):
        left = table[x1][x3] + table[R.op(x1, x3)][R.op(x2, x3)]
        right = table[R.op(x1, x2)][x3] + table[x1][x2]
        if (left - right) % m:
            raise DomainError(f'condition (1) fails at ({x1}, {x2}, {x3})', witness=(x1, x2, x3))
    return Cocycle2(m, table)


def add_coboundary(R, phi, lam):
    """phi + delta(lam) with delta(lam)(x, y) = lam(x) - lam(x*y).

    Raises:
        DomainError: lam is not constant on the <u, d>-orbits
    """
    m = phi.modulus
    for x in range(R.n):
        if lam[R.u[x]] % m != lam[x] % m or lam[R.d[x]] % m != lam[x] % m:
            raise DomainError(f'cochain is not constant on the orbit of {x}', witness=(x,))
    table = [[(phi.value(x, y) + lam[x] - lam[R.op(x, y)]) % m for y in range(R.n)] for x in range(R.n)]
    return make_cocycle(R, m, table)
