"""GL-rack words, presentations of fronts, colorings and enveloping groups."""
import itertools
import logging
from collections import Counter

from networkx.utils import UnionFind
from sympy.combinatorics.free_groups import free_group

from glrack.errors import DomainError, ResourceError
from glrack.models import (
    AbGroupInvariants,
    Down,
    Gen,
    GLPresentation,
    GLRelation,
    GroupPresentation,
    Star,
    Up,
    WordNormalForm,
)
from glrack.services.algebra import group_inverses, left_division_table, orbits, validate_group
from glrack.services.diagram import classify_cusps, crossing_signs, trace
from glrack.services.linalg import cokernel
from glrack.utils.settings import resolve_cap

logger = logging.getLogger(__name__)


# Words


def _act(factors, sign, head, right):
    """Factors of ``spine(factors) *^sign spine(head, right)`` in left-associated form.

    Uses x *^s (b *^e z) = ((x *^-e z) *^s b) *^e z.
    """
    if not right:
        return factors + [(sign, head)]
    e, z = right[-1]
    inner = _act(factors + [(-e, z)], sign, head, right[:-1])
    return inner + [(e, z)]


def _free_reduce(factors):
    out = []
    for sign, name in factors:
        if out and out[-1] == (-sign, name):
            out.pop()
        else:
            out.append((sign, name))
    return out


def _cancel_loops(k, l, head, factors):
    # ud((x*x) * rest) = x * rest
    factors = list(factors)
    while k and l and factors and factors[0] == (1, head):
        k, l = k - 1, l - 1
        factors = factors[1:]
    return WordNormalForm(k, l, head, tuple(factors))


def _normalize(w):
    if isinstance(w, Gen):
        return WordNormalForm(0, 0, w.name, ())
    if isinstance(w, Up):
        a = _normalize(w.arg)
        return _cancel_loops(a.k + 1, a.l, a.head, a.factors)
    if isinstance(w, Down):
        a = _normalize(w.arg)
        return _cancel_loops(a.k, a.l + 1, a.head, a.factors)
    if isinstance(w, Star):
        a = _normalize(w.left)
        b = _normalize(w.right)
        factors = _free_reduce(_act(list(a.factors), w.sign, b.head, list(b.factors)))
        return _cancel_loops(a.k, a.l, a.head, factors)
    raise DomainError(f'not a GL-rack word: {w!r}')


def word_normal_form(w):
    """(k, l, spine) view of ``w`` as a WordNormalForm."""
    return _normalize(w)


def normal_form(w):
    """Rewrite ``w`` to u^k d^l applied to a left-associated spine.

    Applies u(x)*y -> u(x*y), d(x)*y -> d(x*y), x*u(y) -> x*y, x*d(y) -> x*y,
    right distributivity, x *^e y *^-e y -> x and ud(x*x) -> x. Equal normal
    forms imply equal words; the converse is not decided.
    """
    return _normalize(w).to_word()


def evaluate_word(w, R, assignment, division=None):
    """Image of ``w`` in R under the homomorphism extending ``assignment``.

    Raises:
        DomainError: a generator of ``w`` is not assigned
    """
    if isinstance(w, Gen):
        if w.name not in assignment:
            raise DomainError(f'generator {w.name} is not assigned')
        return assignment[w.name]
    if isinstance(w, Up):
        return R.u[evaluate_word(w.arg, R, assignment, division)]
    if isinstance(w, Down):
        return R.d[evaluate_word(w.arg, R, assignment, division)]
    x = evaluate_word(w.left, R, assignment, division)
    y = evaluate_word(w.right, R, assignment, division)
    if w.sign > 0:
        return R.op(x, y)
    division = division or left_division_table(R.rack)
    return division[x][y]


# Presentations of fronts


def segment_name(sid):
    return f'x{sid}'


def gl_presentation(diagram):
    """One generator per segment; crossing, over-strand and cusp relations.

    A crossing of sign e gives ``incoming *^e over = outgoing`` for the
    under-strand and identifies the two halves of the over-strand. A cusp gives
    ``outgoing = u(incoming)`` when up and ``outgoing = d(incoming)`` when down.
    """
    strands = trace(diagram)
    relations = []
    crossings = {c.event: c for c in crossing_signs(diagram, strands)}
    cusps = {c.event: c for c in classify_cusps(diagram, strands)}
    for inc in strands.incidences:
        if inc.event in crossings:
            c = crossings[inc.event]
            over = Gen(segment_name(c.over_in))
            relations.append(GLRelation(Star(Gen(segment_name(c.under_in)), over, c.sign),
                                        Gen(segment_name(c.under_out)), 'crossing'))
            relations.append(GLRelation(Gen(segment_name(c.over_out)), over, 'over'))
        else:
            c = cusps[inc.event]
            wrap = Up if c.tag == 'up' else Down
            relations.append(GLRelation(Gen(segment_name(c.outgoing)), wrap(Gen(segment_name(c.incoming))), 'cusp'))
    generators = tuple(segment_name(s.id) for s in strands.segments)
    return GLPresentation(generators, tuple(relations))


def _substitute(w, name, replacement):
    if isinstance(w, Gen):
        return replacement if w.name == name else w
    if isinstance(w, Up):
        return Up(_substitute(w.arg, name, replacement))
    if isinstance(w, Down):
        return Down(_substitute(w.arg, name, replacement))
    return Star(_substitute(w.left, name, replacement), _substitute(w.right, name, replacement), w.sign)


def simplify_presentation(P):
    """Eliminate generators that a relation defines in terms of the others.

    A relation ``g = w`` (or ``w = g``) with g not occurring in w removes g and
    substitutes w everywhere else. Relations are processed in order.
    """
    generators = list(P.generators)
    relations = list(P.relations)
    i = 0
    while i < len(relations):
        rel = relations[i]
        target = None
        if isinstance(rel.lhs, Gen) and rel.lhs.name not in rel.rhs.generators():
            target, value = rel.lhs.name, rel.rhs
        elif isinstance(rel.rhs, Gen) and rel.rhs.name not in rel.lhs.generators():
            target, value = rel.rhs.name, rel.lhs
        if target is None:
            i += 1
            continue
        del relations[i]
        generators.remove(target)
        relations = [GLRelation(_substitute(r.lhs, target, value), _substitute(r.rhs, target, value), r.tag)
                     for r in relations]
        i = 0
    return GLPresentation(tuple(generators), tuple(relations))


def _erase_ud(w):
    if isinstance(w, (Up, Down)):
        return _erase_ud(w.arg)
    if isinstance(w, Star):
        return Star(_erase_ud(w.left), _erase_ud(w.right), w.sign)
    return w


def underlying_quandle_presentation(P):
    """Drop u and d from every relation and merge the identified generators.

    Each class of identified generators is renamed to its first member.
    Relations that become syntactic identities are dropped.
    """
    erased = [GLRelation(_erase_ud(r.lhs), _erase_ud(r.rhs), r.tag) for r in P.relations]
    order = {g: i for i, g in enumerate(P.generators)}
    uf = UnionFind(P.generators)
    for rel in erased:
        if isinstance(rel.lhs, Gen) and isinstance(rel.rhs, Gen):
            uf.union(rel.lhs.name, rel.rhs.name)
    rename = {}
    for block in uf.to_sets():
        first = min(block, key=order.get)
        for g in block:
            rename[g] = first

    def relabel(w):
        if isinstance(w, Gen):
            return Gen(rename[w.name])
        return Star(relabel(w.left), relabel(w.right), w.sign)

    relations = []
    for rel in erased:
        lhs, rhs = relabel(rel.lhs), relabel(rel.rhs)
        if lhs != rhs and GLRelation(lhs, rhs, rel.tag) not in relations:
            relations.append(GLRelation(lhs, rhs, rel.tag))
    generators = tuple(g for g in P.generators if rename[g] == g)
    return GLPresentation(generators, tuple(relations))


def count_presentation_solutions(P, R, cap=None):
    """Number of assignments of the generators into R satisfying every relation.

    Raises:
        ResourceError: |R|^gens exceeds TUPLE_CAP
    """
    cap = resolve_cap(cap, 'TUPLE_CAP')
    if R.n ** len(P.generators) > cap:
        raise ResourceError(f'{R.n}^{len(P.generators)} assignments exceed the cap {cap}')
    division = left_division_table(R.rack)
    count = 0
    for values in itertools.product(range(R.n), repeat=len(P.generators)):
        assignment = dict(zip(P.generators, values))
        if all(evaluate_word(r.lhs, R, assignment, division) == evaluate_word(r.rhs, R, assignment, division)
               for r in P.relations):
            count += 1
    return count


# Colorings


class _Sweep:
    """Per-event data for a left-to-right pass over a traced front."""

    def __init__(self, diagram):
        self.strands = trace(diagram)
        self.cusps = {c.event: c for c in classify_cusps(diagram, self.strands)}
        self.crossings = {c.event: c for c in crossing_signs(diagram, self.strands)}


def _cusp_map(R, tag):
    return R.u if tag == 'up' else R.d


def coloring_weights(diagram, R, weight=None, modulus=0):
    """Colorings of ``diagram`` by R grouped by total crossing weight.

    Transfer count over the colors of the strands crossing each vertical line.
    ``weight(sign, x, y)`` is the weight of a crossing whose incoming under-arc
    has color x and whose over-arc has color y; weights are summed mod ``modulus``
    (or over Z when modulus is 0).

    Returns:
        Counter mapping total weight to the number of colorings
    """
    sweep = _Sweep(diagram)
    division = left_division_table(R.rack)
    states = Counter({((), 0): 1})
    for inc in sweep.strands.incidences:
        i = inc.level - 1
        nxt = Counter()
        if inc.kind == 'L':
            cusp = sweep.cusps[inc.event]
            f = _cusp_map(R, cusp.tag)
            lower_in = cusp.incoming == inc.segments[0]
            for (state, w), mult in states.items():
                for c in range(R.n):
                    pair = (c, f[c]) if lower_in else (f[c], c)
                    nxt[(state[:i] + pair + state[i:], w)] += mult
        elif inc.kind == 'R':
            cusp = sweep.cusps[inc.event]
            f = _cusp_map(R, cusp.tag)
            lower_in = cusp.incoming == inc.segments[0]
            for (state, w), mult in states.items():
                lower, upper = state[i], state[i + 1]
                came, went = (lower, upper) if lower_in else (upper, lower)
                if f[came] == went:
                    nxt[(state[:i] + state[i + 2:], w)] += mult
        else:
            crossing = sweep.crossings[inc.event]
            d_over = sweep.strands.directions[inc.segments[1]]
            d_under = sweep.strands.directions[inc.segments[0]]
            for (state, w), mult in states.items():
                lower, upper = state[i], state[i + 1]
                raised = R.op(lower, upper) if d_over > 0 else division[lower][upper]
                if weight is not None:
                    x = lower if d_under > 0 else raised
                    w = w + weight(crossing.sign, x, upper)
                    if modulus:
                        w %= modulus
                nxt[(state[:i] + (upper, raised) + state[i + 2:], w)] += mult
        states = nxt
    totals = Counter()
    for (_, w), mult in states.items():
        totals[w] += mult
    return totals


def count_colorings(diagram, R):
    """Number of colorings of the front by the GL-rack R."""
    return sum(coloring_weights(diagram, R).values())


def iter_colorings(diagram, R):
    """Yield every coloring as a tuple of segment colors, in lexicographic seed order."""
    sweep = _Sweep(diagram)
    division = left_division_table(R.rack)
    incidences = sweep.strands.incidences
    colors = [None] * len(sweep.strands.segments)

    def visit(t):
        if t == len(incidences):
            yield tuple(colors)
            return
        inc = incidences[t]
        if inc.kind == 'X':
            left_lower, left_upper, right_lower, right_upper = inc.segments
            d_over = sweep.strands.directions[left_upper]
            a, b = colors[left_lower], colors[left_upper]
            colors[right_lower] = b
            colors[right_upper] = R.op(a, b) if d_over > 0 else division[a][b]
            yield from visit(t + 1)
            return
        cusp = sweep.cusps[inc.event]
        f = _cusp_map(R, cusp.tag)
        if inc.kind == 'L':
            for c in range(R.n):
                colors[cusp.incoming] = c
                colors[cusp.outgoing] = f[c]
                yield from visit(t + 1)
        elif f[colors[cusp.incoming]] == colors[cusp.outgoing]:
            yield from visit(t + 1)

    yield from visit(0)


def coloring_profile(diagram, racks):
    """count_colorings against each rack in turn."""
    return [count_colorings(diagram, R) for R in racks]


# Enveloping groups


def _free_group(names):
    if not names:
        return None, {}
    F, *gens = free_group(','.join(names))
    return F, dict(zip(names, gens))


def _syllables(word):
    return tuple((str(sym), int(e)) for sym, e in word.array_form)


def _relator_word(relator, gens, F):
    word = F.identity
    for name, e in relator:
        word = word * gens[name] ** e
    return word


def env_of_gl_rack(R):
    """Env(R): one generator e_x per element, e_{x*y} = e_y^-1 e_x e_y and e_{u(x)} = e_{d(x)} = e_x."""
    names = [f'e{x}' for x in range(R.n)]
    relators = []
    for x in range(R.n):
        for y in range(R.n):
            relators.append(((names[y], -1), (names[x], 1), (names[y], 1), (names[R.op(x, y)], -1)))
    for x in range(R.n):
        for image in (R.u[x], R.d[x]):
            if image != x:
                relators.append(((names[image], 1), (names[x], -1)))
    return GroupPresentation(names, _reduce_relators(names, relators))


def _reduce_relators(names, relators):
    F, gens = _free_group(names)
    reduced = []
    for rel in relators:
        word = _syllables(_relator_word(rel, gens, F)) if F is not None else ()
        if word and word not in reduced:
            reduced.append(word)
    return reduced


def env_of_presentation(P):
    """Enveloping group of a presented GL-rack.

    Generators become e_g; x *^s y maps to e_y^-s e_x e_y^s and u, d map to the
    identity, so every relation lhs = rhs yields the relator image(lhs) image(rhs)^-1.
    """
    names = list(P.generators)
    F, gens = _free_group(names)
    if F is None:
        return GroupPresentation((), ())

    def image(w):
        if isinstance(w, Gen):
            return gens[w.name]
        if isinstance(w, (Up, Down)):
            return image(w.arg)
        y = image(w.right)
        return y ** -w.sign * image(w.left) * y ** w.sign

    relators = []
    for rel in P.relations:
        word = _syllables(image(rel.lhs) * image(rel.rhs) ** -1)
        if word and word not in relators:
            relators.append(word)
    return GroupPresentation(names, relators)


def _is_identification(relator):
    return (len(relator) == 2 and relator[0][0] != relator[1][0]
            and {relator[0][1], relator[1][1]} == {1, -1})


def collapse_ud(P):
    """Merge generators identified by relators of the form a b^-1 until none remain.

    Each merged class keeps its first generator; the remaining relators are
    rewritten, freely reduced and deduplicated.
    """
    order = {g: i for i, g in enumerate(P.generators)}
    generators = list(P.generators)
    relators = [tuple(r) for r in P.relators]
    rounds = 0
    while True:
        identifications = [r for r in relators if _is_identification(r)]
        if not identifications:
            break
        rounds += 1
        uf = UnionFind(generators)
        for (a, _), (b, _) in identifications:
            uf.union(a, b)
        rename = {}
        for block in uf.to_sets():
            first = min(block, key=order.get)
            for g in block:
                rename[g] = first
        generators = [g for g in generators if rename[g] == g]
        rewritten = [tuple((rename[g], e) for g, e in r) for r in relators]
        relators = _reduce_relators(generators, rewritten)
    logger.debug(f'collapse_ud: {len(P.generators)} -> {len(generators)} generators in {rounds} rounds')
    return GroupPresentation(generators, relators)


def abelianization(P):
    """Invariant factors and free rank of the abelianized group."""
    column = {g: j for j, g in enumerate(P.generators)}
    rows = []
    for rel in P.relators:
        row = [0] * len(P.generators)
        for g, e in rel:
            row[column[g]] += e
        if any(row):
            rows.append(row)
    if not P.generators:
        return AbGroupInvariants()
    return cokernel(rows, len(P.generators))


def env_rank(R):
    """Free rank of Env(R)^ab: orbits of the group generated by u, d and every S_y."""
    return len(orbits(R, [R.u, R.d] + [R.rack.column(y) for y in range(R.n)]))


def env_map_is_homomorphism(P, group, assignment):
    """True iff sending each generator to ``assignment[g]`` kills every relator in the group table."""
    G = validate_group(group)
    inv = group_inverses(G)
    missing = [g for g in P.generators if g not in assignment]
    if missing:
        raise DomainError(f'generators without an image: {", ".join(missing)}')
    for rel in P.relators:
        value = 0
        for g, e in rel:
            step = assignment[g] if e > 0 else inv[assignment[g]]
            for _ in range(abs(e)):
                value = G[value][step]
        if value != 0:
            return False
    return True
