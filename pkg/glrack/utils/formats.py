"""Text formats for GL-racks, groups, fronts and cocycles.

All formats are line oriented; ``#`` starts a comment and blank lines are
ignored. Parse errors carry the 1-based line and column of the offending token.
"""
import re

from glrack.errors import FormatError
from glrack.models import Event, FiniteGLRack, FiniteRack
from glrack.services.algebra import validate_group
from glrack.services.diagram import make_diagram
from glrack.services.homology import tuple_classes

EVENT_PATTERN = re.compile(r'^([LRX])([0-9]+)$')


def _lines(text):
    """(line number, raw line, content without comment) for every non-blank line."""
    for number, raw in enumerate(text.splitlines(), 1):
        content = raw.split('#', 1)[0].strip()
        if content:
            yield number, raw, content


def _column(raw, token, start=0):
    pos = raw.find(token, start)
    return pos + 1 if pos >= 0 else None


def _ints(number, raw, body):
    values = []
    start = 0
    for token in body.split():
        start = raw.find(token, start)
        try:
            values.append(int(token))
        except ValueError:
            raise FormatError(f'expected an integer, got {token!r}', number, start + 1)
        start += len(token)
    return values


def _keyed(number, raw, content, key):
    """Body after ``key:`` on this line."""
    prefix = f'{key}:'
    if not content.startswith(prefix):
        raise FormatError(f'expected {prefix!r}', number, _column(raw, content[:1]) or 1)
    return content[len(prefix):]


def _header(lines, name):
    try:
        number, raw, content = next(lines)
    except StopIteration:
        raise FormatError(f'empty input, expected header {name!r}')
    if content != name:
        raise FormatError(f'expected header {name!r}, got {content!r}', number, _column(raw, content) or 1)


def _next(lines, what):
    try:
        return next(lines)
    except StopIteration:
        raise FormatError(f'unexpected end of input, expected {what}')


def _table(lines, header):
    """Parse ``size: n``, ``op:`` and n rows after the header."""
    number, raw, content = _next(lines, 'size')
    size = _ints(number, raw, _keyed(number, raw, content, 'size'))
    if len(size) != 1 or size[0] < 1:
        raise FormatError('size must be one positive integer', number)
    n = size[0]
    number, raw, content = _next(lines, 'op')
    if _keyed(number, raw, content, 'op').strip():
        raise FormatError("'op:' must stand on its own line", number)
    rows = []
    for x in range(n):
        number, raw, content = _next(lines, f'row {x} of the {header} table')
        row = _ints(number, raw, content)
        if len(row) != n:
            raise FormatError(f'row {x} has {len(row)} entries, expected {n}', number)
        for y, v in enumerate(row):
            if not 0 <= v < n:
                raise FormatError(f'entry {v} out of range [0,{n})', number, y + 1)
        rows.append(row)
    return n, rows


def _permutation(lines, key, n):
    number, raw, content = _next(lines, key)
    values = _ints(number, raw, _keyed(number, raw, content, key))
    if sorted(values) != list(range(n)):
        raise FormatError(f'{key} is not a permutation of [0,{n})', number)
    return values


def _trailing(lines):
    for number, raw, content in lines:
        raise FormatError(f'unexpected content {content!r}', number, _column(raw, content))


def parse_glrack(text):
    """FiniteGLRack from the ``glrack`` format. Axioms are not checked here."""
    lines = _lines(text)
    _header(lines, 'glrack')
    n, rows = _table(lines, 'glrack')
    u = _permutation(lines, 'u', n)
    d = _permutation(lines, 'd', n)
    _trailing(lines)
    return FiniteGLRack(FiniteRack(rows), u, d)


def write_glrack(R):
    out = ['glrack', f'size: {R.n}', 'op:']
    out.extend(' '.join(str(v) for v in row) for row in R.table)
    out.append('u: ' + ' '.join(str(v) for v in R.u))
    out.append('d: ' + ' '.join(str(v) for v in R.d))
    return '\n'.join(out) + '\n'


def parse_group(text):
    """Validated group table (identity 0) from the ``group`` format."""
    lines = _lines(text)
    _header(lines, 'group')
    _, rows = _table(lines, 'group')
    _trailing(lines)
    return validate_group(rows)


def write_group(table):
    out = ['group', f'size: {len(table)}', 'op:']
    out.extend(' '.join(str(v) for v in row) for row in table)
    return '\n'.join(out) + '\n'


def parse_diagram(text):
    """FrontDiagram from ``front:`` and optional ``orient:`` lines.

    Raises:
        FormatError: syntax errors, out-of-range levels (naming the event index)
            or a wrong number of orientation signs
    """
    events = None
    orientations = None
    front_line = orient_line = None
    for number, raw, content in _lines(text):
        if content.startswith('front:'):
            if events is not None:
                raise FormatError("duplicate 'front:' line", number)
            events = []
            start = 0
            for token in content[len('front:'):].split():
                start = raw.find(token, start)
                match = EVENT_PATTERN.match(token)
                if not match:
                    raise FormatError(f'bad event {token!r}', number, start + 1)
                events.append(Event(match.group(1), int(match.group(2))))
                start += len(token)
            front_line = number
        elif content.startswith('orient:'):
            if orientations is not None:
                raise FormatError("duplicate 'orient:' line", number)
            orientations = []
            start = 0
            for token in content[len('orient:'):].split():
                start = raw.find(token, start)
                if token not in ('+', '-'):
                    raise FormatError(f'orientation must be + or -, got {token!r}', number, start + 1)
                orientations.append(1 if token == '+' else -1)
                start += len(token)
            orient_line = number
        else:
            raise FormatError(f'unexpected line {content!r}', number, _column(raw, content))
    if events is None:
        raise FormatError("missing 'front:' line")
    try:
        return make_diagram(events, orientations)
    except FormatError as e:
        line = orient_line if 'orientation' in str(e) else front_line
        raise FormatError(str(e), line)


def write_diagram(diagram):
    return diagram.to_text()


def parse_cocycle(text):
    """(modulus, {(x, y): value}) from the ``cocycle`` format."""
    lines = _lines(text)
    _header(lines, 'cocycle')
    number, raw, content = _next(lines, 'coeff')
    coeff = _ints(number, raw, _keyed(number, raw, content, 'coeff'))
    if len(coeff) != 1 or coeff[0] < 2:
        raise FormatError('coeff must be one integer >= 2', number)
    values = {}
    for number, raw, content in lines:
        entry = _ints(number, raw, content)
        if len(entry) != 3:
            raise FormatError('expected "x y value"', number)
        x, y, v = entry
        if (x, y) in values:
            raise FormatError(f'duplicate entry for ({x}, {y})', number)
        values[(x, y)] = v
    return coeff[0], values


def write_cocycle(R, phi):
    """Cocycle text listing the value on every non-degenerate class representative."""
    index = tuple_classes(R, 2)
    out = ['cocycle', f'coeff: {phi.modulus}']
    for key in index.basis:
        x, y = index.representative(key)
        out.append(f'{x} {y} {phi.value(x, y)}')
    return '\n'.join(out) + '\n'
