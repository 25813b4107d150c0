"""Unit tests for GL-rack algebra."""
import itertools

import pytest

from glrack.errors import DomainError, FormatError, ResourceError
from glrack.models import FiniteGLRack, FiniteRack
from glrack.services.algebra import (
    automorphism_group,
    coset_gl_rack,
    compose,
    conjugation_gl_rack,
    enumerate_gl_structures,
    gl_rack_isomorphic,
    group_family_gl_rack,
    homogeneous_representation,
    inner_automorphism,
    identity_perm,
    inverse_gl_structure,
    invert,
    is_automorphism,
    is_isomorphism,
    is_quandle,
    left_division_table,
    make_gl_rack,
    perm_power,
    permutation_rack,
    permutation_rack_relations,
    relabel,
    require_gl_rack,
    translation_gl_rack,
    trivial_gl_rack,
    ud_orbits,
    validate_gl_rack,
    validate_group,
    validate_rack,
)
from glrack.services.census import enumerate_gl_racks, enumerate_racks
from oracles import all_gl_structures

Z2 = ((0, 1), (1, 0))
Z3 = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def test_compose_applies_right_factor_first():
    """Test compose(p, q) = p o q."""
    p = (1, 2, 0)
    q = (1, 0, 2)
    assert compose(p, q) == (2, 1, 0)
    assert compose(p, invert(p)) == identity_perm(3)
    assert perm_power(p, 3) == identity_perm(3)
    assert perm_power(p, -1) == invert(p)


def test_validate_rack_reports_column_witness():
    """Test a non-bijective column is named with its witness."""
    report = validate_rack([[0, 0], [0, 1]])
    assert not report.ok
    assert report.axioms_failed()[0] == 'column-bijectivity'
    assert report.violations[0].witness == (0, 0, 1)


def test_validate_rack_accepts_dihedral(r3):
    """Test R_3 satisfies the rack axioms."""
    assert validate_rack(r3.rack).ok


def test_validate_gl_rack_names_failed_axiom():
    """Test a swap for u with identity d breaks L1."""
    R = FiniteGLRack(FiniteRack([[0, 0], [1, 1]]), (1, 0), (0, 1))
    report = validate_gl_rack(R)
    assert not report.ok
    assert 'L1' in report.axioms_failed()
    with pytest.raises(DomainError):
        require_gl_rack(R)


def test_validate_gl_rack_rejects_non_rack():
    """Test the GL check refuses a table that is not a rack."""
    R = FiniteGLRack(FiniteRack([[0, 0], [0, 1]]), (0, 1), (0, 1))
    with pytest.raises(DomainError):
        validate_gl_rack(R)


def test_finite_rack_rejects_ragged_table():
    """Test malformed tables raise FormatError."""
    with pytest.raises(FormatError):
        FiniteRack([[0, 1], [0]])
    with pytest.raises(FormatError):
        FiniteRack([[0, 2], [1, 0]])


def test_left_division_inverts_operation(r3):
    """Test (x *^-1 y) * y = x."""
    division = left_division_table(r3.rack)
    for x, y in itertools.product(range(3), repeat=2):
        assert r3.op(division[x][y], y) == x


def test_translation_rack_condition(z4):
    """Test the translation family needs u + d = -sigma."""
    assert z4.u == (1, 2, 3, 0)
    with pytest.raises(DomainError):
        translation_gl_rack(4, 2, 1, 0)


@pytest.mark.parametrize('n', [1, 2, 3])
def test_axiom_consequences(n):
    """Test u, d are commuting automorphisms with ud(x) * x = x."""
    for R in enumerate_gl_racks(n):
        assert is_automorphism(R, R.u)
        assert is_automorphism(R, R.d)
        assert compose(R.u, R.d) == compose(R.d, R.u)
        for x in range(R.n):
            assert R.op(R.u[R.d[x]], x) == x


@pytest.mark.slow
def test_axiom_consequences_order_four():
    """Test the automorphism consequences on every GL-rack of order 4."""
    for R in enumerate_gl_racks(4):
        assert is_automorphism(R, R.u) and is_automorphism(R, R.d)
        assert all(R.op(R.u[R.d[x]], x) == x for x in range(R.n))
        assert compose(R.u, R.d) == compose(R.d, R.u)


@pytest.mark.parametrize('n', [1, 2, 3, pytest.param(4, marks=pytest.mark.slow)])
def test_structures_match_axiom_scan(n):
    """Test every rack's GL-structures against all pairs, commuting, and closed under automorphisms."""
    for rack in enumerate_racks(n):
        pairs = enumerate_gl_structures(rack)
        assert pairs == all_gl_structures(rack)
        found = set(pairs)
        auts = automorphism_group(FiniteGLRack(rack, identity_perm(n), identity_perm(n)))
        for u, d in pairs:
            assert compose(u, d) == compose(d, u)
            for p in auts:
                p_inv = invert(p)
                assert (compose(compose(p, u), p_inv), compose(compose(p, d), p_inv)) in found


@pytest.mark.parametrize('sigma', [
    (0,), (1, 0), (1, 2, 0), (1, 0, 2), (1, 2, 3, 0), (1, 0, 3, 2), (1, 0, 2, 3), (1, 2, 0, 3),
    pytest.param((1, 2, 3, 4, 0), marks=pytest.mark.slow),
    pytest.param((1, 0, 3, 4, 2), marks=pytest.mark.slow),
])
def test_permutation_rack_structures(sigma):
    """Test GL-structures on permutation racks against a scan of every pair."""
    rack = permutation_rack(sigma)
    pairs = enumerate_gl_structures(rack, cap=5)
    sigma_inv = invert(sigma)
    ident = identity_perm(len(sigma))
    assert pairs == all_gl_structures(rack)
    assert (ident, sigma_inv) in pairs
    assert (sigma_inv, ident) in pairs
    cube_is_identity = perm_power(sigma, 3) == ident
    assert ((tuple(sigma), tuple(sigma)) in pairs) == cube_is_identity
    for u, d in pairs:
        assert all(permutation_rack_relations(rack, u, d).values())


@pytest.mark.parametrize('sigma', [(1, 0), (1, 0, 2), (1, 0, 2, 3)])
def test_single_transposition_has_no_equal_structure(sigma):
    """Test u = d is impossible when sigma is one transposition."""
    assert enumerate_gl_structures(permutation_rack(sigma), mode='u_equals_d') == []


def test_permutation_rack_relations_flags():
    """Test the du / ud flags for (id, sigma^-1)."""
    sigma = (1, 2, 0)
    flags = permutation_rack_relations(permutation_rack(sigma), identity_perm(3), invert(sigma))
    assert flags['du_is_sigma_inverse']
    assert flags['ud_is_sigma_inverse']
    assert flags['u_commutes_with_sigma']


def test_permutation_rack_relations_rejects_quandle(r3):
    """Test a non-permutation rack is refused."""
    with pytest.raises(DomainError):
        permutation_rack_relations(r3.rack, r3.u, r3.d)


def test_enumerate_structures_cap(r3):
    """Test the order cap is enforced."""
    with pytest.raises(ResourceError):
        enumerate_gl_structures(r3.rack, cap=2)


def test_automorphism_group_of_trivial_quandle():
    """Test every permutation is an automorphism of T_3 with identity maps."""
    assert len(automorphism_group(trivial_gl_rack(3))) == 6


def test_automorphisms_commute_with_maps(t2_flip):
    """Test automorphisms must commute with u and d."""
    group = automorphism_group(t2_flip)
    assert group[0] == (0, 1)
    assert all(is_automorphism(t2_flip, p) for p in group)


def test_relabel_is_isomorphic(z4):
    """Test a relabelled copy is found isomorphic."""
    p = (2, 0, 3, 1)
    copy = relabel(z4, p)
    assert is_isomorphism(z4, copy, p)
    found = gl_rack_isomorphic(z4, copy)
    assert found is not None
    assert is_isomorphism(z4, copy, found)


def test_non_isomorphic_structures():
    """Test T_2 with identity maps and with swaps are not isomorphic."""
    assert gl_rack_isomorphic(trivial_gl_rack(2), trivial_gl_rack(2, (1, 0), (1, 0))) is None


def test_ud_orbits(z9):
    """Test <u, d> acts transitively on Z_9 when u = +1."""
    assert ud_orbits(z9) == [tuple(range(9))]
    assert ud_orbits(trivial_gl_rack(3)) == [(0,), (1,), (2,)]


@pytest.mark.parametrize('n', [2, 3])
def test_inner_automorphisms_are_automorphisms(n):
    """Test every right translation S_y is an automorphism of the GL-rack."""
    for R in enumerate_gl_racks(n):
        for y in range(R.n):
            S = inner_automorphism(R, y)
            assert S == tuple(R.op(x, y) for x in range(R.n))
            assert is_automorphism(R, S)


def test_inner_automorphism_range(r3):
    """Test an element outside the rack is refused."""
    with pytest.raises(DomainError):
        inner_automorphism(r3, 3)


def test_group_constructions():
    """Test conjugation and group-family GL-racks."""
    conj = conjugation_gl_rack(Z3)
    assert is_quandle(conj)
    family = group_family_gl_rack(Z2, 0, 1, 1)
    assert family.u == (1, 0)
    assert validate_gl_rack(family).ok
    with pytest.raises(DomainError):
        group_family_gl_rack(Z3, 0, 1, 1)


def test_validate_group_rejects_bad_identity():
    """Test element 0 must be the identity."""
    with pytest.raises(FormatError):
        validate_group([[1, 0], [0, 1]])


def test_inverse_structure(r3, t2_flip):
    """Test (X, *, u^-1, d^-1) on involutory racks."""
    assert inverse_gl_structure(r3) == r3
    assert inverse_gl_structure(t2_flip).u == (1, 0)
    with pytest.raises(DomainError):
        inverse_gl_structure(translation_gl_rack(3, 1, 1, 1))


def test_make_gl_rack_defaults_to_identity():
    """Test u and d default to the identity."""
    R = make_gl_rack([[0, 0], [1, 1]])
    assert R.u == R.d == (0, 1)


def _check_homogeneous(R):
    data, iso = homogeneous_representation(R)
    coset = coset_gl_rack(data)
    assert coset.n == R.n
    assert is_isomorphism(coset, R, iso)


@pytest.mark.parametrize('n', [1, 2, 3])
def test_homogeneous_representation(n):
    """Test the coset GL-rack of the homogeneous data is isomorphic to R."""
    for R in enumerate_gl_racks(n):
        _check_homogeneous(R)


@pytest.mark.slow
def test_homogeneous_representation_order_four():
    """Test the homogeneous representation on every GL-rack of order 4."""
    for R in enumerate_gl_racks(4):
        _check_homogeneous(R)


def test_homogeneous_representation_of_translation_rack(z4):
    """Test a transitive GL-rack gives a single orbit."""
    data, iso = homogeneous_representation(z4)
    assert len(data.subgroups) == 1
    assert data.tau == (0,)
    _check_homogeneous(z4)
