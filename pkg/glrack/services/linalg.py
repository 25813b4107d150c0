"""Exact integer linear algebra: Smith normal form and lattice helpers.

All matrices are sympy ``Matrix`` objects with integer entries. ``L * A * R = D``
with L, R unimodular and D diagonal with d1 | d2 | ...
"""
from collections import namedtuple
from math import gcd

from sympy import Matrix, zeros

from glrack.errors import DomainError
from glrack.models import AbGroupInvariants

SmithForm = namedtuple('SmithForm', ['factors', 'diagonal', 'left', 'right', 'rank'])


def as_matrix(rows, cols=None):
    """Integer sympy Matrix from nested lists; ``cols`` fixes the width of an empty matrix."""
    if isinstance(rows, Matrix):
        return rows
    rows = [list(r) for r in rows]
    if not rows:
        return zeros(0, cols or 0)
    return Matrix(rows)


# Moves the entry of least absolute value in the block starting at [s, s] to [s, s]
def _move_least_to_start(matr, left, right, s):
    rows, cols = matr.shape
    pos = None
    num = 0
    for i in range(s, rows):
        for j in range(s, cols):
            v = abs(matr[i, j])
            if v != 0 and (pos is None or v < num):
                pos, num = (i, j), v
                if num == 1:
                    break
        if num == 1:
            break
    if pos is None:
        return False
    if pos[0] != s:
        matr.row_swap(s, pos[0])
        left.row_swap(s, pos[0])
    if pos[1] != s:
        matr.col_swap(s, pos[1])
        right.col_swap(s, pos[1])
    if matr[s, s] < 0:
        matr.row_op(s, lambda val, col: -val)
        left.row_op(s, lambda val, col: -val)
    return True


# Reduces the edging (row s and column s) modulo the pivot
def _reduce_edging(matr, left, right, s):
    rows, cols = matr.shape
    pivot = matr[s, s]
    for i in range(s + 1, rows):
        if matr[i, s] != 0:
            q = matr[i, s] // pivot
            matr.row_op(i, lambda val, col: val - q * matr[s, col])
            left.row_op(i, lambda val, col: val - q * left[s, col])
    for j in range(s + 1, cols):
        if matr[s, j] != 0:
            q = matr[s, j] // pivot
            matr.col_op(j, lambda val, row: val - q * matr[row, s])
            right.col_op(j, lambda val, row: val - q * right[row, s])


# Moves the least nonzero entry of the edging to the pivot
def _move_least_edging_to_start(matr, left, right, s):
    rows, cols = matr.shape
    pos = (s, s)
    num = abs(matr[s, s])
    for i in range(s + 1, rows):
        if matr[i, s] != 0 and abs(matr[i, s]) < num:
            pos, num = (i, s), abs(matr[i, s])
    for j in range(s + 1, cols):
        if matr[s, j] != 0 and abs(matr[s, j]) < num:
            pos, num = (s, j), abs(matr[s, j])
    if pos[0] > s:
        matr.row_swap(s, pos[0])
        left.row_swap(s, pos[0])
    elif pos[1] > s:
        matr.col_swap(s, pos[1])
        right.col_swap(s, pos[1])
    if matr[s, s] < 0:
        matr.row_op(s, lambda val, col: -val)
        left.row_op(s, lambda val, col: -val)


def _edging_is_zero(matr, s):
    rows, cols = matr.shape
    return all(matr[i, s] == 0 for i in range(s + 1, rows)) and all(matr[s, j] == 0 for j in range(s + 1, cols))


# Finds a row of the remaining block with an entry not divisible by the pivot
def _non_divisible_row(matr, s):
    rows, cols = matr.shape
    pivot = matr[s, s]
    for i in range(s + 1, rows):
        for j in range(s + 1, cols):
            if matr[i, j] % pivot != 0:
                return i
    return None


def smith_normal_form(M):
    """Smith normal form with transformation matrices.

    Args:
        M: Integer matrix (sympy Matrix or nested lists)

    Returns:
        SmithForm(factors, diagonal, left, right, rank) with
        left * M * right == diagonal and factors the nonzero diagonal entries
    """
    matr = as_matrix(M).copy()
    rows, cols = matr.shape
    left, right = Matrix.eye(rows), Matrix.eye(cols)

    rank = 0
    for s in range(min(rows, cols)):
        if not _move_least_to_start(matr, left, right, s):
            break
        while True:
            while not _edging_is_zero(matr, s):
                _reduce_edging(matr, left, right, s)
                _move_least_edging_to_start(matr, left, right, s)
            i = _non_divisible_row(matr, s)
            if i is None:
                break
            matr.row_op(s, lambda val, col: val + matr[i, col])
            left.row_op(s, lambda val, col: val + left[i, col])
        rank = s + 1

    factors = tuple(int(matr[k, k]) for k in range(rank))
    return SmithForm(factors, matr, left, right, rank)


def invariant_factors(M):
    return smith_normal_form(M).factors


def matrix_rank(M):
    return smith_normal_form(M).rank


def cokernel(M, width=None):
    """Invariants of Z^cols / (row space of M)."""
    matr = as_matrix(M, width)
    form = smith_normal_form(matr)
    return AbGroupInvariants(tuple(d for d in form.factors if d > 1), matr.shape[1] - form.rank)


def integer_kernel(M):
    """Columns forming a basis of {x in Z^cols : M x = 0}."""
    form = smith_normal_form(M)
    cols = form.right.shape[1]
    return [form.right[:, j] for j in range(form.rank, cols)]


def lattice_basis(generators, dim):
    """Basis (as a matrix of columns) of the lattice spanned by the given columns."""
    if not generators:
        return zeros(dim, 0)
    G = Matrix.hstack(*generators)
    form = smith_normal_form(G)
    GV = G * form.right
    if form.rank == 0:
        return zeros(dim, 0)
    return GV[:, :form.rank]


def coordinates(basis, vectors):
    """Integer coordinates of each column of ``vectors`` in a full-column-rank ``basis``.

    Raises:
        DomainError: some vector is not in the lattice
    """
    form = smith_normal_form(basis)
    k = basis.shape[1]
    if form.rank != k:
        raise DomainError('lattice basis is not linearly independent')
    image = form.left * vectors
    W = zeros(k, vectors.shape[1])
    for j in range(vectors.shape[1]):
        for i in range(image.shape[0]):
            if i < k:
                q, r = divmod(int(image[i, j]), int(form.diagonal[i, i]))
                if r != 0:
                    raise DomainError('vector is not in the lattice')
                W[i, j] = q
            elif image[i, j] != 0:
                raise DomainError('vector is not in the lattice')
    return form.right * W


def quotient(basis, sub_generators):
    """Invariants of L / S for a lattice basis L and generators of a sublattice S."""
    k = basis.shape[1]
    if k == 0:
        return AbGroupInvariants()
    if not sub_generators:
        return AbGroupInvariants((), k)
    coords = coordinates(basis, Matrix.hstack(*sub_generators))
    form = smith_normal_form(coords)
    return AbGroupInvariants(tuple(d for d in form.factors if d > 1), k - form.rank)


def solve_mod(E, m, width):
    """Generators of {x in Z_m^width : E x = 0 mod m}, adapted to the module structure.

    Args:
        E: Equation matrix (rows are equations)
        m: Modulus >= 2
        width: Number of unknowns

    Returns:
        List of (vector, order) with vector a tuple of residues; for prime m
        the vectors are a basis over the field
    """
    E = as_matrix(E, width)
    if E.shape[0] == 0:
        return [(tuple(int(i == j) for i in range(width)), m) for j in range(width)]
    form = smith_normal_form(E)
    gens = []
    for j in range(width):
        d = form.factors[j] if j < form.rank else 0
        g = gcd(d, m)
        if g == 1:
            continue
        column = form.right[:, j] * (m // g)
        gens.append((tuple(int(v) % m for v in column), g))
    return gens


def span_mod(vectors, m, width):
    """Generators and orders of the Z_m-submodule spanned by ``vectors``.

    The submodule is the image of the generator matrix; it is returned as a
    Smith-adapted generating set in the same format as solve_mod.
    """
    if not vectors:
        return []
    G = Matrix([list(v) for v in vectors]).T
    form = smith_normal_form(G)
    basis = form.left.inv()
    gens = []
    for j in range(form.rank):
        d = form.factors[j]
        order = m // gcd(d, m)
        if order == 1:
            continue
        column = basis[:, j] * d
        gens.append((tuple(int(v) % m for v in column), order))
    return gens


def module_size(gens):
    """Order of a Smith-adapted Z_m-module given by (vector, order) generators."""
    size = 1
    for _, order in gens:
        size *= order
    return size
