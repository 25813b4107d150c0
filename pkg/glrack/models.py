"""Value types for glrack.

Every type here is an immutable dataclass. Elements of finite structures are
0-based indices and permutations are tuples ``p`` with ``p[x]`` the image of
``x``.
"""
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from glrack.errors import FormatError


def _is_permutation(p, n):
    return len(p) == n and sorted(p) == list(range(n))


@dataclass(frozen=True)
class FiniteRack:
    """Operation table of a finite rack candidate; ``table[x][y] = x*y``."""
    table: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        n = len(rows)
        if n == 0:
            raise FormatError('rack table is empty')
        for x, row in enumerate(rows):
            if len(row) != n:
                raise FormatError(f'row {x} has {len(row)} entries, expected {n}')
            for y, v in enumerate(row):
                if not 0 <= v < n:
                    raise FormatError(f'entry [{x}][{y}] = {v} is out of range [0,{n})')
        object.__setattr__(self, 'table', rows)

    @property
    def n(self):
        return len(self.table)

    @cached_property
    def array(self):
        """Read-only numpy view of the table."""
        arr = np.array(self.table, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def op(self, x, y):
        return self.table[x][y]

    def column(self, y):
        """The right translation x -> x*y as a tuple."""
        return tuple(row[y] for row in self.table)

    def to_dict(self):
        return {'n': self.n, 'op': [list(row) for row in self.table]}

    def __repr__(self):
        return f'<FiniteRack n={self.n}>'


@dataclass(frozen=True)
class FiniteGLRack:
    """A rack table together with the two maps u and d."""
    rack: FiniteRack
    u: tuple
    d: tuple

    def __post_init__(self):
        u = tuple(int(v) for v in self.u)
        d = tuple(int(v) for v in self.d)
        if not _is_permutation(u, self.rack.n):
            raise FormatError(f'u = {list(u)} is not a permutation of [0,{self.rack.n})')
        if not _is_permutation(d, self.rack.n):
            raise FormatError(f'd = {list(d)} is not a permutation of [0,{self.rack.n})')
        object.__setattr__(self, 'u', u)
        object.__setattr__(self, 'd', d)

    @property
    def n(self):
        return self.rack.n

    @property
    def table(self):
        return self.rack.table

    def op(self, x, y):
        return self.rack.table[x][y]

    def to_dict(self):
        data = self.rack.to_dict()
        data.update({'u': list(self.u), 'd': list(self.d)})
        return data

    def __repr__(self):
        return f'<FiniteGLRack n={self.n} u={list(self.u)} d={list(self.d)}>'


@dataclass(frozen=True)
class Violation:
    """One failed axiom together with the elements that witness it."""
    axiom: str
    witness: tuple

    def __str__(self):
        return f'{self.axiom} at {self.witness}'


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an axiom check."""
    subject: str
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def axioms_failed(self):
        """Failed axiom labels in first-failure order."""
        return list(dict.fromkeys(v.axiom for v in self.violations))

    def to_dict(self):
        return {
            'subject': self.subject,
            'ok': self.ok,
            'violations': [{'axiom': v.axiom, 'witness': list(v.witness)} for v in self.violations]
        }


@dataclass(frozen=True)
class CosetGLData:
    """Input of the coset construction.

    ``group`` is a multiplication table with identity 0. Index ``i`` ranges over
    the subgroups; ``tau`` is a permutation of that index set and ``mu`` its
    inverse.
    """
    group: tuple
    subgroups: tuple
    z: tuple
    r: tuple
    s: tuple
    tau: tuple

    def __post_init__(self):
        object.__setattr__(self, 'group', tuple(tuple(row) for row in self.group))
        object.__setattr__(self, 'subgroups', tuple(tuple(sorted(h)) for h in self.subgroups))
        for name in ('z', 'r', 's', 'tau'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        k = len(self.subgroups)
        if not all(len(getattr(self, name)) == k for name in ('z', 'r', 's', 'tau')):
            raise FormatError('z, r, s and tau must have one entry per subgroup')
        if not _is_permutation(self.tau, k):
            raise FormatError(f'tau = {list(self.tau)} is not a permutation of the index set')

    @property
    def mu(self):
        inv = [0] * len(self.tau)
        for i, j in enumerate(self.tau):
            inv[j] = i
        return tuple(inv)

    @property
    def order(self):
        return len(self.group)

    def to_dict(self):
        return {
            'group_order': self.order,
            'subgroups': [list(h) for h in self.subgroups],
            'z': list(self.z),
            'r': list(self.r),
            's': list(self.s),
            'tau': list(self.tau),
            'mu': list(self.mu)
        }


@dataclass(frozen=True)
class Event:
    """One Morse event of a front: left cusp, right cusp or crossing."""
    kind: str
    level: int

    def __str__(self):
        return f'{self.kind}{self.level}'


def L(i):
    return Event('L', i)


def R(i):
    return Event('R', i)


def X(i):
    return Event('X', i)


@dataclass(frozen=True)
class FrontDiagram:
    """Event word of a front plus one orientation sign (+1/-1) per component."""
    events: tuple
    orientations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'events', tuple(self.events))
        object.__setattr__(self, 'orientations', tuple(int(s) for s in self.orientations))

    @property
    def word(self):
        return ' '.join(str(e) for e in self.events)

    def to_text(self):
        signs = ' '.join('+' if s > 0 else '-' for s in self.orientations)
        return f'front: {self.word}\norient: {signs}\n'

    def to_dict(self):
        return {'front': self.word, 'orient': ['+' if s > 0 else '-' for s in self.orientations]}

    def __repr__(self):
        return f'<FrontDiagram {self.word}>'


@dataclass(frozen=True)
class MoveInstance:
    """A located Legendrian move.

    ``kind`` is one of LR1a, LR1b, LR2, LR3, FarCommute. ``direction`` is
    'insert'/'delete' for LR1 and LR2, 'forward' for the others. ``level`` is
    the strand level for insertions; ``variant`` names the LR2 rule.
    """
    kind: str
    position: int
    direction: str = 'forward'
    level: int = None
    variant: str = None

    def __str__(self):
        parts = [self.kind, self.direction, f'@{self.position}']
        if self.level is not None:
            parts.append(f'level={self.level}')
        if self.variant:
            parts.append(self.variant)
        return ' '.join(parts)


# Free GL-rack words


class GLWord:
    """Expression tree over generators with nodes *, *^-1, u and d."""

    def generators(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Gen(GLWord):
    name: str

    def generators(self):
        return {self.name}

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Star(GLWord):
    """``left * right`` (sign +1) or ``left *^-1 right`` (sign -1)."""
    left: GLWord
    right: GLWord
    sign: int = 1

    def generators(self):
        return self.left.generators() | self.right.generators()

    def __str__(self):
        op = '*' if self.sign > 0 else '/'
        right = str(self.right)
        if isinstance(self.right, Star):
            right = f'({right})'
        return f'{self.left}{op}{right}'


@dataclass(frozen=True)
class Up(GLWord):
    arg: GLWord

    def generators(self):
        return self.arg.generators()

    def __str__(self):
        return f'u({self.arg})'


@dataclass(frozen=True)
class Down(GLWord):
    arg: GLWord

    def generators(self):
        return self.arg.generators()

    def __str__(self):
        return f'd({self.arg})'


@dataclass(frozen=True)
class WordNormalForm:
    """``u^k d^l`` applied to the left-associated product ``head *^e1 f1 ...``."""
    k: int
    l: int
    head: str
    factors: tuple = ()

    def spine(self):
        word = Gen(self.head)
        for sign, name in self.factors:
            word = Star(word, Gen(name), sign)
        return word

    def to_word(self):
        word = self.spine()
        for _ in range(self.l):
            word = Down(word)
        for _ in range(self.k):
            word = Up(word)
        return word


@dataclass(frozen=True)
class GLRelation:
    """``lhs = rhs`` tagged 'crossing', 'over' or 'cusp'."""
    lhs: GLWord
    rhs: GLWord
    tag: str

    def __str__(self):
        return f'{self.lhs} = {self.rhs}'


@dataclass(frozen=True)
class GLPresentation:
    generators: tuple
    relations: tuple = ()

    def to_dict(self):
        return {
            'gens': list(self.generators),
            'rels': [{'tag': rel.tag, 'text': str(rel)} for rel in self.relations]
        }


@dataclass(frozen=True)
class GroupPresentation:
    """Group presentation; each relator is a tuple of (generator, exponent) syllables."""
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'generators', tuple(self.generators))
        object.__setattr__(self, 'relators', tuple(tuple((g, int(e)) for g, e in rel) for rel in self.relators))

    @staticmethod
    def format_relator(relator):
        if not relator:
            return '1'
        return '*'.join(g if e == 1 else f'{g}**{e}' for g, e in relator)

    def to_dict(self):
        return {'gens': list(self.generators), 'rels': [self.format_relator(r) for r in self.relators]}

    def __repr__(self):
        return f'<GroupPresentation gens={len(self.generators)} rels={len(self.relators)}>'


@dataclass(frozen=True)
class AbGroupInvariants:
    """Finitely generated abelian group Z^rank + Z/d1 + Z/d2 + ... with d1 | d2 | ..."""
    torsion: tuple = ()
    rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'torsion', tuple(int(d) for d in self.torsion))

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append('Z')
        elif self.rank > 1:
            parts.append(f'Z^{self.rank}')
        parts.extend(f'Z/{d}' for d in self.torsion)
        return ' + '.join(parts) if parts else '0'

    def to_dict(self):
        return {'torsion': list(self.torsion), 'rank': self.rank, 'text': str(self)}


@dataclass(frozen=True)
class Cocycle2:
    """Legendrian 2-cocycle with values in Z_m, stored as a full n x n table.

    Build instances through ``homology.make_cocycle`` so the cocycle conditions
    are checked.
    """
    modulus: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, 'table', tuple(tuple(int(v) for v in row) for row in self.table))

    def value(self, x, y):
        return self.table[x][y]

    @property
    def is_zero(self):
        return not any(any(row) for row in self.table)

    def __repr__(self):
        return f'<Cocycle2 mod {self.modulus} support={sum(bool(v) for row in self.table for v in row)}>'


@dataclass(frozen=True)
class GroupRingElement:
    """Element of Z[Z_m]: ``terms`` lists (exponent, multiplicity) sorted by exponent."""
    modulus: int
    terms: tuple = field(default=())

    @classmethod
    def from_counts(cls, modulus, counts):
        merged = Counter()
        for exponent, mult in dict(counts).items():
            if mult:
                merged[exponent % modulus if modulus else exponent] += mult
        return cls(modulus, tuple(sorted((e, c) for e, c in merged.items() if c)))

    @property
    def total(self):
        return sum(c for _, c in self.terms)

    def multiplicity(self, exponent):
        return dict(self.terms).get(exponent, 0)

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for exponent, count in self.terms:
            if exponent == 0:
                parts.append(str(count))
                continue
            power = 't' if exponent == 1 else f't^{exponent}'
            parts.append(power if count == 1 else f'{count}*{power}')
        return ' + '.join(parts)

    def to_dict(self):
        return {'modulus': self.modulus, 'terms': [list(t) for t in self.terms], 'text': str(self)}
