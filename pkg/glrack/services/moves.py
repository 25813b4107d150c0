"""Legendrian Reidemeister moves on event words.

Every move is a local rewrite of a window of the event word. A rewrite is valid
when the replacement block maps the running strand count to the same value as
the block it replaces, so the rest of the word is untouched. Orientations are
carried across the rewrite through the left cusps that survive it.
"""
import logging
import random

from glrack.errors import DomainError, MoveNotApplicable
from glrack.models import FrontDiagram, L, MoveInstance, R, X
from glrack.services.diagram import strand_counts, trace
from glrack.utils.settings import resolve_cap

logger = logging.getLogger(__name__)

MOVE_KINDS = ('LR1a', 'LR1b', 'LR2', 'LR3', 'FarCommute')

LOOP_WORDS = {
    'LR1a': lambda i: (L(i + 1), X(i), R(i + 1)),
    'LR1b': lambda i: (L(i), X(i + 1), R(i)),
}

# variant: (long word, short word) around a strand at level i
SLIDE_WORDS = {
    'left-descending': (lambda i: (L(i), X(i + 1), X(i)), lambda i: (L(i + 1),)),
    'left-ascending': (lambda i: (L(i + 1), X(i), X(i + 1)), lambda i: (L(i),)),
    'right-descending': (lambda i: (X(i + 1), X(i), R(i + 1)), lambda i: (R(i),)),
    'right-ascending': (lambda i: (X(i), X(i + 1), R(i)), lambda i: (R(i + 1),)),
}

ZIGZAG_WORDS = {
    'up': lambda i: (L(i + 1), R(i)),
    'down': lambda i: (L(i), R(i + 1)),
}


def _run_block(block, k):
    """Strand count after scanning ``block`` from count k, or None if some event is out of range."""
    for event in block:
        i = event.level
        if event.kind == 'L':
            if not 1 <= i <= k + 1:
                return None
            k += 2
        else:
            if not 1 <= i <= k - 1:
                return None
            if event.kind == 'R':
                k -= 2
    return k


def commute_pair(first, second):
    """The swapped pair for two adjacent events with disjoint support, or None.

    The map is its own inverse on the pairs it accepts. R(i) L(i) has two
    disjoint swaps and goes to L(i) R(i+2), so the other one, L(i+2) R(i), is
    left alone.
    """
    a, i = first.kind, first.level
    b, j = second.kind, second.level
    if a == 'X' and b == 'X':
        if abs(i - j) >= 2:
            return X(j), X(i)
    elif a == 'X' and b == 'L':
        if j <= i:
            return L(j), X(i + 2)
        if j >= i + 2:
            return L(j), X(i)
    elif a == 'L' and b == 'X':
        if j <= i - 2:
            return X(j), L(i)
        if j >= i + 2:
            return X(j - 2), L(i)
    elif a == 'X' and b == 'R':
        if j >= i + 2:
            return R(j), X(i)
        if j <= i - 2:
            return R(j), X(i - 2)
    elif a == 'R' and b == 'X':
        if j <= i - 2:
            return X(j), R(i)
        if j >= i:
            return X(j + 2), R(i)
    elif a == 'L' and b == 'L':
        if j >= i + 2:
            return L(j - 2), L(i)
        if j <= i:
            return L(j), L(i + 2)
    elif a == 'R' and b == 'R':
        if j >= i:
            return R(j + 2), R(i)
        if j <= i - 2:
            return R(j), R(i - 2)
    elif a == 'L' and b == 'R':
        if j >= i + 2:
            return R(j - 2), L(i)
        if j <= i - 3:
            return R(j), L(i - 2)
    elif a == 'R' and b == 'L':
        if j >= i + 1:
            return L(j + 2), R(i)
        if j <= i:
            return L(j), R(i + 2)
    return None


def _slide_level(variant, window, form):
    """Strand level i for which ``window`` is the long or short word of a slide, or None."""
    words = SLIDE_WORDS[variant][0 if form == 'long' else 1]
    base = window[0].level
    for i in (base - 1, base):
        if i >= 1 and words(i) == tuple(window):
            return i
    return None


def _loop_level(kind, window):
    base = window[0].level
    for i in (base - 1, base):
        if i >= 1 and LOOP_WORDS[kind](i) == tuple(window):
            return i
    return None


def _replacement(events, move):
    """(start, length of replaced window, new block, pairs of surviving in-window left cusps)."""
    p = move.position
    kind = move.kind
    if not 0 <= p <= len(events):
        raise MoveNotApplicable(f'position {p} is outside the word')

    if kind in LOOP_WORDS:
        if move.direction == 'insert':
            if move.level is None:
                raise MoveNotApplicable(f'{kind} insertion needs a strand level')
            return p, 0, LOOP_WORDS[kind](move.level), ()
        window = events[p:p + 3]
        if len(window) < 3 or _loop_level(kind, window) is None:
            raise MoveNotApplicable(f'no {kind} loop at position {p}')
        return p, 3, (), ()

    if kind == 'LR2':
        if move.variant not in SLIDE_WORDS:
            raise MoveNotApplicable(f'unknown LR2 variant {move.variant!r}')
        long_word, short_word = SLIDE_WORDS[move.variant]
        left = move.variant.startswith('left')
        if move.direction == 'insert':
            window = events[p:p + 1]
            i = _slide_level(move.variant, window, 'short') if window else None
            if i is None:
                raise MoveNotApplicable(f'LR2 {move.variant}: no matching cusp at position {p}')
            return p, 1, long_word(i), ((p, p),) if left else ()
        window = events[p:p + 3]
        i = _slide_level(move.variant, window, 'long') if len(window) == 3 else None
        if i is None:
            raise MoveNotApplicable(f'LR2 {move.variant}: no matching slide at position {p}')
        return p, 3, short_word(i), ((p, p),) if left else ()

    if kind == 'LR3':
        window = events[p:p + 3]
        if len(window) == 3 and all(e.kind == 'X' for e in window):
            a, b, c = window
            if a == c and abs(a.level - b.level) == 1:
                return p, 3, (b, a, b), ()
        raise MoveNotApplicable(f'no braid triple at position {p}')

    if kind == 'FarCommute':
        window = events[p:p + 2]
        swapped = commute_pair(*window) if len(window) == 2 else None
        if swapped is None:
            raise MoveNotApplicable(f'events at {p} and {p + 1} do not commute')
        pairs = []
        if window[0].kind == 'L':
            pairs.append((p, p + 1))
        if window[1].kind == 'L':
            pairs.append((p + 1, p))
        return p, 2, swapped, tuple(pairs)

    raise MoveNotApplicable(f'unknown move kind {kind!r}')


def _transport(diagram, events, cusp_map):
    """Orientation signs for ``events`` so that every surviving left cusp keeps its direction."""
    old = trace(diagram)
    new = trace(events, ())
    old_lower = {inc.event: old.directions[inc.segments[0]] for inc in old.incidences if inc.kind == 'L'}
    source = {new_t: old_t for old_t, new_t in cusp_map.items()}

    signs = [None] * new.component_count
    for inc in new.incidences:
        if inc.kind != 'L' or inc.event not in source:
            continue
        lower = inc.segments[0]
        c = new.component_of[lower]
        if signs[c] is None:
            signs[c] = 1 if new.directions[lower] == old_lower[source[inc.event]] else -1
    if None in signs:
        logger.warning(f'{signs.count(None)} components lost every left cusp; defaulting to +')
        signs = [1 if s is None else s for s in signs]
    return tuple(signs)


def _rewrite(diagram, start, length, block, inner_pairs):
    events = diagram.events
    counts = strand_counts(events)
    before = counts[start]
    after = counts[start + length]
    if _run_block(block, before) != after:
        raise MoveNotApplicable(f'replacement {" ".join(map(str, block))} is not valid at position {start}')
    new_events = events[:start] + tuple(block) + events[start + length:]

    shift = len(block) - length
    cusp_map = {}
    for t, event in enumerate(events):
        if event.kind != 'L':
            continue
        if t < start:
            cusp_map[t] = t
        elif t >= start + length:
            cusp_map[t] = t + shift
    cusp_map.update(dict(inner_pairs))
    return FrontDiagram(new_events, _transport(diagram, new_events, cusp_map))


def apply_move(diagram, move):
    """Apply a located move and carry the orientations across.

    Raises:
        MoveNotApplicable: the pattern does not match or the levels are out of range
    """
    start, length, block, pairs = _replacement(diagram.events, move)
    return _rewrite(diagram, start, length, block, pairs)


def stabilize(diagram, position, level, kind='up'):
    """Insert a zig-zag at the strand occupying ``level`` before event ``position``.

    Not a Legendrian isotopy: tb drops by one and r changes by one.
    """
    if kind not in ZIGZAG_WORDS:
        raise DomainError(f'unknown stabilization {kind!r}; expected up or down')
    if not 0 <= position <= len(diagram.events):
        raise MoveNotApplicable(f'position {position} is outside the word')
    return _rewrite(diagram, position, 0, ZIGZAG_WORDS[kind](level), ())


def inverse_move(diagram, move):
    """The move that undoes ``move`` on apply_move(diagram, move)."""
    p = move.position
    if move.kind in LOOP_WORDS:
        if move.direction == 'insert':
            return MoveInstance(move.kind, p, 'delete')
        window = diagram.events[p:p + 3]
        level = _loop_level(move.kind, window) if len(window) == 3 else None
        if level is None:
            raise MoveNotApplicable(f'no {move.kind} loop at position {p}')
        return MoveInstance(move.kind, p, 'insert', level=level)
    if move.kind == 'LR2':
        direction = 'delete' if move.direction == 'insert' else 'insert'
        return MoveInstance('LR2', p, direction, variant=move.variant)
    return MoveInstance(move.kind, p)


def _applies(events, counts, move):
    try:
        start, length, block, _ = _replacement(events, move)
    except MoveNotApplicable:
        return False
    return _run_block(block, counts[start]) == counts[start + length]


def applicable_moves(diagram, kind=None, direction=None):
    """Every applicable move, optionally filtered by kind and direction, in word order."""
    events = diagram.events
    counts = strand_counts(events)
    kinds = MOVE_KINDS if kind is None else (kind,)
    found = []
    for k in kinds:
        if k in LOOP_WORDS:
            if direction in (None, 'insert'):
                for p in range(len(events)):
                    for level in range(1, counts[p] + 1):
                        found.append(MoveInstance(k, p, 'insert', level=level))
            if direction in (None, 'delete'):
                found.extend(MoveInstance(k, p, 'delete') for p in range(len(events) - 2))
        elif k == 'LR2':
            for variant in SLIDE_WORDS:
                if direction in (None, 'insert'):
                    found.extend(MoveInstance('LR2', p, 'insert', variant=variant) for p in range(len(events)))
                if direction in (None, 'delete'):
                    found.extend(MoveInstance('LR2', p, 'delete', variant=variant) for p in range(len(events) - 2))
        elif k == 'LR3':
            found.extend(MoveInstance('LR3', p) for p in range(len(events) - 2))
        elif k == 'FarCommute':
            found.extend(MoveInstance('FarCommute', p) for p in range(len(events) - 1))
        else:
            raise DomainError(f'unknown move kind {k!r}')
    return [m for m in found if _applies(events, counts, m)]


def random_moves(diagram, count, seed, retries=None):
    """Apply ``count`` randomly drawn applicable moves; deterministic for a fixed seed.

    Each step draws a kind (and for LR1/LR2 a direction) and picks uniformly among
    the matching applicable moves. Draws with no candidate are redrawn up to
    ``retries`` times (MOVE_RETRIES by default) before the step is skipped.
    """
    retries = resolve_cap(retries, 'MOVE_RETRIES')
    rng = random.Random(seed)
    current = diagram
    for step in range(count):
        for _ in range(retries):
            kind = rng.choice(MOVE_KINDS)
            direction = rng.choice(('insert', 'delete')) if kind in ('LR1a', 'LR1b', 'LR2') else None
            candidates = applicable_moves(current, kind, direction)
            if candidates:
                move = rng.choice(candidates)
                current = apply_move(current, move)
                logger.debug(f'step {step}: {move} -> {current.word}')
                break
        else:
            logger.info(f'step {step}: no applicable move after {retries} draws')
    return current
