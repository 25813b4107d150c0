"""Unit tests for front diagrams and classical invariants."""
import pytest

from glrack.errors import DomainError, FormatError
from glrack.models import L, R, X
from glrack.services.diagram import (
    classical_invariants,
    classify_cusps,
    crossing_signs,
    make_diagram,
    standard_diagram,
    strand_counts,
    summary,
    trace,
)


def test_strand_counts():
    """Test running strand counts of a valid word."""
    assert strand_counts([L(1), L(3), X(2), R(3), R(1)]) == [0, 2, 4, 4, 2, 0]


def test_strand_counts_names_bad_event():
    """Test an out-of-range event is reported by index."""
    with pytest.raises(FormatError, match='event 1'):
        strand_counts([L(1), X(2), R(1)])
    with pytest.raises(FormatError, match='does not close'):
        strand_counts([L(1)])


def test_trace_unknot(unknot):
    """Test U(1,1) has two segments on one component."""
    strands = trace(unknot)
    assert len(strands.segments) == 2
    assert strands.component_count == 1
    assert strands.directions == (1, -1)


def test_trace_two_component_link():
    """Test two unlinked zig-zags trace to two components."""
    D = make_diagram([L(1), R(1), L(1), R(1)], [1, -1])
    strands = trace(D)
    assert strands.component_count == 2
    assert strands.directions == (1, -1, -1, 1)


def test_make_diagram_checks_orientation_count():
    """Test the number of orientation signs must match the components."""
    with pytest.raises(FormatError, match='orientation'):
        make_diagram([L(1), R(1)], [1, 1])


def test_trefoil_invariants(trefoil):
    """Test the Legendrian trefoil has tb = 1 and r = 0."""
    info = summary(trefoil)
    assert info == {'components': 1, 'crossings': 3, 'cusps': 4, 'writhe': 3, 'tb': 1, 'r': 0}
    assert all(c.sign == 1 for c in crossing_signs(trefoil))
    assert len(trace(trefoil).segments) == 10


@pytest.mark.parametrize('m', [1, 2, 3, 4])
def test_zig_zag_unknot_invariants(m):
    """Test (tb, r) = (-m, 1 - m) for U(1, 2m-1)."""
    inv = classical_invariants(standard_diagram('U(1,2m-1)', m))
    assert (inv.tb, inv.r) == (-m, 1 - m)


@pytest.mark.parametrize('m', [1, 3])
def test_balanced_unknot_invariants(m):
    """Test (tb, r) = (-m, 0) for U(m, m)."""
    inv = classical_invariants(standard_diagram('U(m,m)', m))
    assert (inv.tb, inv.r) == (-m, 0)


def test_balanced_unknot_needs_odd_m():
    """Test U(m, m) is refused for even m."""
    with pytest.raises(DomainError):
        standard_diagram('U(m,m)', 2)
    with pytest.raises(DomainError):
        standard_diagram('figure-eight')


def test_cusp_tags_along_u33(u33):
    """Test U(3,3) meets three up cusps then three down cusps."""
    cusps = classify_cusps(u33)
    assert sorted(c.tag for c in cusps) == ['down'] * 3 + ['up'] * 3


def test_reversal_negates_rotation(u13):
    """Test reversing the orientation negates r and keeps tb."""
    forward = classical_invariants(u13)
    backward = classical_invariants(make_diagram(u13.events, [-1]))
    assert backward.tb == forward.tb
    assert backward.r == -forward.r


def test_to_text(unknot):
    """Test the diagram text form."""
    assert unknot.to_text() == 'front: L1 R1\norient: +\n'
