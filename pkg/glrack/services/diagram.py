"""Front diagrams as Morse event words: validation, tracing and classical invariants.

Levels count from the bottom (level 1). At ``X(i)`` the strand entering at
level i+1 and leaving at level i descends and is the over-strand.
"""
import logging
from collections import namedtuple
from dataclasses import dataclass

from glrack.errors import DomainError, FormatError
from glrack.models import FrontDiagram, L, R, X

logger = logging.getLogger(__name__)

CuspInfo = namedtuple('CuspInfo', ['event', 'kind', 'tag', 'incoming', 'outgoing', 'component'])
CrossingInfo = namedtuple('CrossingInfo', ['event', 'sign', 'over_in', 'over_out', 'under_in', 'under_out'])
ClassicalInvariants = namedtuple('ClassicalInvariants', ['writhe', 'tb', 'r'])


@dataclass(frozen=True)
class Segment:
    """Arc between two consecutive events on the same strand."""
    id: int
    start: int
    end: int
    start_level: int
    end_level: int


@dataclass(frozen=True)
class Incidence:
    """Segments meeting at an event.

    For cusps ``segments`` is (lower, upper); for crossings it is
    (left_lower, left_upper, right_lower, right_upper).
    """
    event: int
    kind: str
    level: int
    segments: tuple


@dataclass(frozen=True)
class StrandMap:
    segments: tuple
    incidences: tuple
    components: tuple
    component_of: tuple
    directions: tuple

    @property
    def component_count(self):
        return len(self.components)

    def to_dict(self):
        return {
            'segments': len(self.segments),
            'components': [list(c) for c in self.components],
            'directions': ['right' if d > 0 else 'left' for d in self.directions]
        }


def strand_counts(events):
    """Strand count before each event and after the last one.

    Raises:
        FormatError: an event is out of range for the running strand count
    """
    k = 0
    counts = [0]
    for t, event in enumerate(events):
        i = event.level
        if event.kind == 'L':
            if not 1 <= i <= k + 1:
                raise FormatError(f'event {t} ({event}) needs 1 <= i <= {k + 1}')
            k += 2
        elif event.kind == 'X':
            if not 1 <= i <= k - 1:
                raise FormatError(f'event {t} ({event}) needs 1 <= i <= {k - 1}')
        elif event.kind == 'R':
            if not 1 <= i <= k - 1:
                raise FormatError(f'event {t} ({event}) needs 1 <= i <= {k - 1}')
            k -= 2
        else:
            raise FormatError(f'event {t} has unknown kind {event.kind!r}')
        counts.append(k)
    if k != 0:
        raise FormatError(f'front does not close: {k} strands remain after the last event')
    return counts


def _scan(events):
    """Cut the front into segments and record the incidences at each event."""
    state = []
    starts = {}
    segments = []
    incidences = []
    next_id = 0

    def open_segment(event, level):
        nonlocal next_id
        sid = next_id
        next_id += 1
        starts[sid] = (event, level)
        return sid

    def close_segment(sid, event, level):
        start, start_level = starts.pop(sid)
        segments.append(Segment(sid, start, event, start_level, level))

    for t, event in enumerate(events):
        i = event.level
        if event.kind == 'L':
            lower = open_segment(t, i)
            upper = open_segment(t, i + 1)
            state[i - 1:i - 1] = [lower, upper]
            incidences.append(Incidence(t, 'L', i, (lower, upper)))
        elif event.kind == 'R':
            lower, upper = state[i - 1], state[i]
            close_segment(lower, t, i)
            close_segment(upper, t, i + 1)
            del state[i - 1:i + 1]
            incidences.append(Incidence(t, 'R', i, (lower, upper)))
        else:
            left_lower, left_upper = state[i - 1], state[i]
            close_segment(left_lower, t, i)
            close_segment(left_upper, t, i + 1)
            right_lower = open_segment(t, i)
            right_upper = open_segment(t, i + 1)
            state[i - 1], state[i] = right_lower, right_upper
            incidences.append(Incidence(t, 'X', i, (left_lower, left_upper, right_lower, right_upper)))

    segments.sort(key=lambda s: s.id)
    return tuple(segments), tuple(incidences)


def _partners(incidences):
    """Map each segment end (id, 'L'|'R') to the end it continues into."""
    partner = {}

    def join(a, b):
        partner[a] = b
        partner[b] = a

    for inc in incidences:
        if inc.kind == 'L':
            lower, upper = inc.segments
            join((lower, 'L'), (upper, 'L'))
        elif inc.kind == 'R':
            lower, upper = inc.segments
            join((lower, 'R'), (upper, 'R'))
        else:
            left_lower, left_upper, right_lower, right_upper = inc.segments
            join((left_lower, 'R'), (right_upper, 'L'))
            join((left_upper, 'R'), (right_lower, 'L'))
    return partner


def trace(diagram, orientations=None):
    """Segments, components and segment directions of a front.

    Args:
        diagram: FrontDiagram (or a bare event sequence)
        orientations: Signs overriding diagram.orientations; missing signs count as '+'

    Returns:
        StrandMap with components in discovery order
    """
    events = diagram.events if isinstance(diagram, FrontDiagram) else tuple(diagram)
    if orientations is None:
        orientations = diagram.orientations if isinstance(diagram, FrontDiagram) else ()
    segments, incidences = _scan(events)
    partner = _partners(incidences)

    directions = [0] * len(segments)
    component_of = [-1] * len(segments)
    components = []
    for seg in segments:
        if component_of[seg.id] != -1:
            continue
        c = len(components)
        sign = orientations[c] if c < len(orientations) else 1
        cycle = []
        sid, direction = seg.id, (1 if sign > 0 else -1)
        while True:
            cycle.append(sid)
            component_of[sid] = c
            directions[sid] = direction
            nxt, side = partner[(sid, 'R' if direction > 0 else 'L')]
            sid, direction = nxt, (1 if side == 'L' else -1)
            if sid == seg.id:
                break
        components.append(tuple(cycle))

    return StrandMap(segments, incidences, tuple(components), tuple(component_of), tuple(directions))


def make_diagram(events, orientations=None):
    """Validated FrontDiagram; orientations default to all '+'.

    Raises:
        FormatError: invalid levels or a wrong number of orientation signs
    """
    events = tuple(events)
    strand_counts(events)
    count = trace(events).component_count
    if orientations is None:
        orientations = (1,) * count
    orientations = tuple(1 if int(s) > 0 else -1 for s in orientations)
    if len(orientations) != count:
        raise FormatError(f'{len(orientations)} orientation signs given for {count} components')
    return FrontDiagram(events, orientations)


def classify_cusps(diagram, strands=None):
    """Tag each cusp 'up' or 'down' along the orientation.

    A cusp is up when the outgoing branch is the upper one.
    """
    strands = strands or trace(diagram)
    cusps = []
    for inc in strands.incidences:
        if inc.kind == 'X':
            continue
        lower, upper = inc.segments
        inward = -1 if inc.kind == 'L' else 1
        if strands.directions[lower] == inward:
            incoming, outgoing = lower, upper
        else:
            incoming, outgoing = upper, lower
        tag = 'up' if outgoing == upper else 'down'
        cusps.append(CuspInfo(inc.event, inc.kind, tag, incoming, outgoing, strands.component_of[lower]))
    return cusps


def _det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def crossing_signs(diagram, strands=None):
    """Sign and oriented in/out segments of every crossing.

    The sign is +1 iff det(v_over, v_under) > 0, where the over-strand descends
    and the under-strand ascends as drawn left to right.
    """
    strands = strands or trace(diagram)
    crossings = []
    for inc in strands.incidences:
        if inc.kind != 'X':
            continue
        left_lower, left_upper, right_lower, right_upper = inc.segments
        d_over = strands.directions[left_upper]
        d_under = strands.directions[left_lower]
        v_over = (d_over, -d_over)
        v_under = (d_under, d_under)
        sign = 1 if _det(v_over, v_under) > 0 else -1
        over_in, over_out = (left_upper, right_lower) if d_over > 0 else (right_lower, left_upper)
        under_in, under_out = (left_lower, right_upper) if d_under > 0 else (right_upper, left_lower)
        crossings.append(CrossingInfo(inc.event, sign, over_in, over_out, under_in, under_out))
    return crossings


def classical_invariants(diagram, strands=None):
    """(writhe, tb, r) of an oriented front."""
    strands = strands or trace(diagram)
    writhe = sum(c.sign for c in crossing_signs(diagram, strands))
    cusps = classify_cusps(diagram, strands)
    up = sum(1 for c in cusps if c.tag == 'up')
    down = len(cusps) - up
    return ClassicalInvariants(writhe, writhe - len(cusps) // 2, (down - up) // 2)


def summary(diagram):
    """Counts and classical invariants as a dict, in report order."""
    strands = trace(diagram)
    inv = classical_invariants(diagram, strands)
    return {
        'components': strands.component_count,
        'crossings': sum(1 for e in diagram.events if e.kind == 'X'),
        'cusps': sum(1 for e in diagram.events if e.kind != 'X'),
        'writhe': inv.writhe,
        'tb': inv.tb,
        'r': inv.r
    }


STANDARD_NAMES = ('U(1,2m-1)', 'U(m,m)', 'trefoil')


def standard_diagram(name, m=1):
    """Standard fronts: the zig-zag unknots and the maximal trefoil.

    Args:
        name: 'U(1,2m-1)', 'U(m,m)' or 'trefoil'
        m: Parameter m >= 1; U(m,m) needs m odd

    Returns:
        FrontDiagram oriented '+'
    """
    if name == 'trefoil':
        return make_diagram([L(1), L(3), X(2), X(2), X(2), R(3), R(1)])
    if m < 1:
        raise DomainError(f'm must be at least 1, got {m}')
    if name == 'U(1,2m-1)':
        events = [L(1)]
        for _ in range(m - 1):
            events += [L(2), R(1)]
        events.append(R(1))
        return make_diagram(events)
    if name == 'U(m,m)':
        if m % 2 == 0:
            raise DomainError(f'U(m,m) needs m odd (tb + r is odd for a knot), got m={m}')
        half = (m - 1) // 2
        events = [L(1)] + [L(3), R(2)] * half + [L(2), R(3)] * half + [R(1)]
        return make_diagram(events)
    raise DomainError(f'unknown standard diagram {name!r}; expected one of {", ".join(STANDARD_NAMES)}')
