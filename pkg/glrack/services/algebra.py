"""Finite GL-racks: validation, automorphisms, GL-structures and constructions."""
import itertools
import logging

import numpy as np
from networkx.utils import UnionFind

from glrack.errors import DomainError, FormatError, ResourceError
from glrack.models import CosetGLData, FiniteGLRack, FiniteRack, ValidationReport, Violation
from glrack.utils.settings import check_order, resolve_cap

logger = logging.getLogger(__name__)


# Permutations


def identity_perm(n):
    return tuple(range(n))


def compose(p, q):
    """p o q, i.e. apply q first."""
    return tuple(p[x] for x in q)


def invert(p):
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def perm_power(p, k):
    """p^k for any integer k."""
    if k < 0:
        p, k = invert(p), -k
    result = identity_perm(len(p))
    for _ in range(k):
        result = compose(p, result)
    return result


def _as_rack(table):
    if isinstance(table, FiniteRack):
        return table
    if isinstance(table, FiniteGLRack):
        return table.rack
    return FiniteRack(table)


def left_division_table(rack):
    """Table of the inverse operation: ``inv[x][y]`` is the z with z*y = x."""
    n = rack.n
    inv = [[0] * n for _ in range(n)]
    for y in range(n):
        for z in range(n):
            inv[rack.table[z][y]][y] = z
    return tuple(tuple(row) for row in inv)


# Validation


def validate_rack(table):
    """Check the two rack axioms.

    Args:
        table: FiniteRack or n x n nested sequence with entry[x][y] = x*y

    Returns:
        ValidationReport naming each violated axiom with its witness
    """
    rack = _as_rack(table)
    T = rack.array
    n = rack.n
    violations = []

    for y in range(n):
        column = T[:, y]
        if np.unique(column).size != n:
            seen = {}
            for x, v in enumerate(column.tolist()):
                if v in seen:
                    violations.append(Violation('column-bijectivity', (y, seen[v], x)))
                    break
                seen[v] = x

    idx = np.arange(n)
    lhs = T[T[:, :, None], idx[None, None, :]]
    rhs = T[T[:, None, :], T[None, :, :]]
    for x, y, z in np.argwhere(lhs != rhs).tolist():
        violations.append(Violation('right-distributivity', (x, y, z)))

    return ValidationReport('rack', tuple(violations))


def validate_gl_rack(R):
    """Check the six GL-axioms (L1)-(L3').

    Args:
        R: FiniteGLRack whose underlying table is a rack

    Returns:
        ValidationReport with one violation per failing witness

    Raises:
        DomainError: the underlying table is not a rack
    """
    rack_report = validate_rack(R.rack)
    if not rack_report.ok:
        raise DomainError(
            f'underlying table is not a rack: {", ".join(str(v) for v in rack_report.violations[:5])}',
            witness=rack_report)

    T = R.rack.array
    u = np.array(R.u)
    d = np.array(R.d)
    n = R.n
    idx = np.arange(n)
    diag = T[idx, idx]
    violations = []

    for x in np.nonzero(u[d[diag]] != idx)[0].tolist():
        violations.append(Violation('L1', (x,)))
    for x in np.nonzero(d[u[diag]] != idx)[0].tolist():
        violations.append(Violation('L1\'', (x,)))
    for x, y in np.argwhere(u[T] != T[u, :]).tolist():
        violations.append(Violation('L2', (x, y)))
    for x, y in np.argwhere(d[T] != T[d, :]).tolist():
        violations.append(Violation('L2\'', (x, y)))
    for x, y in np.argwhere(T[:, u] != T).tolist():
        violations.append(Violation('L3', (x, y)))
    for x, y in np.argwhere(T[:, d] != T).tolist():
        violations.append(Violation('L3\'', (x, y)))

    return ValidationReport('glrack', tuple(violations))


def require_gl_rack(R):
    """Raise DomainError unless R satisfies every GL-axiom."""
    report = validate_gl_rack(R)
    if not report.ok:
        first = report.violations[0]
        raise DomainError(f'not a GL-rack: {first}', witness=first.witness)
    return R


def make_gl_rack(table, u=None, d=None):
    """Build and validate a GL-rack; u and d default to the identity."""
    rack = _as_rack(table)
    n = rack.n
    R = FiniteGLRack(rack, identity_perm(n) if u is None else u, identity_perm(n) if d is None else d)
    return require_gl_rack(R)


def is_quandle(R):
    """True iff x*x = x for every x (equivalently du = ud = id on a GL-rack)."""
    return all(R.op(x, x) == x for x in range(R.n))


def inner_automorphism(R, y):
    """The right translation S_y(x) = x*y."""
    if not 0 <= y < R.n:
        raise DomainError(f'element {y} is out of range [0,{R.n})')
    return R.rack.column(y)


def is_automorphism(R, p):
    """True iff p preserves the operation and commutes with u and d."""
    if sorted(p) != list(range(R.n)):
        return False
    T = R.rack.array
    perm = np.array(p)
    if not np.array_equal(perm[T], T[np.ix_(perm, perm)]):
        return False
    return compose(p, R.u) == compose(R.u, p) and compose(p, R.d) == compose(R.d, p)


def is_isomorphism(R1, R2, p):
    """True iff p carries op, u and d of R1 onto those of R2."""
    if R1.n != R2.n or sorted(p) != list(range(R1.n)):
        return False
    T1 = R1.rack.array
    T2 = R2.rack.array
    perm = np.array(p)
    if not np.array_equal(perm[T1], T2[np.ix_(perm, perm)]):
        return False
    return compose(p, R1.u) == compose(R2.u, p) and compose(p, R1.d) == compose(R2.d, p)


# Isomorphism search


class _IsomorphismSearch:
    """Backtracking over images with forced propagation.

    Once an element has an image, the images of its u/d neighbours and of its
    products with every assigned element are forced. The search branches only
    on the first element left without an image.
    """

    def __init__(self, source, target):
        self.source = source
        self.target = target
        self.n = source.n
        self.src_div = left_division_table(source.rack)
        self.tgt_div = left_division_table(target.rack)
        self.src_maps = [source.u, source.d, invert(source.u), invert(source.d)]
        self.tgt_maps = [target.u, target.d, invert(target.u), invert(target.d)]
        self.nodes = 0

    def _propagate(self, image, used, x, v):
        stack = [(x, v)]
        while stack:
            a, b = stack.pop()
            if image[a] == b:
                continue
            if image[a] != -1 or used[b]:
                return False
            image[a] = b
            used[b] = True
            for sm, tm in zip(self.src_maps, self.tgt_maps):
                stack.append((sm[a], tm[b]))
            for c in range(self.n):
                e = image[c]
                if e == -1:
                    continue
                stack.append((self.source.op(a, c), self.target.op(b, e)))
                stack.append((self.source.op(c, a), self.target.op(e, b)))
                stack.append((self.src_div[a][c], self.tgt_div[b][e]))
                stack.append((self.src_div[c][a], self.tgt_div[e][b]))
        return True

    def search(self, first_only=False):
        found = []

        def extend(image, used):
            self.nodes += 1
            try:
                x = image.index(-1)
            except ValueError:
                p = tuple(image)
                if is_isomorphism(self.source, self.target, p):
                    found.append(p)
                return first_only
            for v in range(self.n):
                if used[v]:
                    continue
                trial, trial_used = list(image), list(used)
                if self._propagate(trial, trial_used, x, v) and extend(trial, trial_used):
                    return True
            return False

        if self.source.n == self.target.n:
            extend([-1] * self.n, [False] * self.n)
        return sorted(found)


def automorphism_group(R, cap=None):
    """All GL-rack automorphisms of R, sorted lexicographically (identity first).

    Args:
        R: Valid FiniteGLRack
        cap: Largest order searched; defaults to ORDER_CAP

    Returns:
        List of permutations forming Aut(X, *, u, d)
    """
    check_order(R.n, cap)
    search = _IsomorphismSearch(R, R)
    group = search.search()
    logger.debug(f'automorphism search on order {R.n}: {len(group)} automorphisms, {search.nodes} nodes')
    return group


def gl_rack_isomorphic(R1, R2, cap=None):
    """Some GL-rack isomorphism R1 -> R2, or None when the exhaustive search finds none."""
    check_order(max(R1.n, R2.n), cap)
    if R1.n != R2.n:
        return None
    found = _IsomorphismSearch(R1, R2).search(first_only=True)
    return found[0] if found else None


def orbits(R, group):
    """Orbits of a permutation group on [0, n), each sorted, ordered by least element."""
    n = R.n if hasattr(R, 'n') else int(R)
    uf = UnionFind(range(n))
    for p in group:
        for x in range(n):
            uf.union(x, p[x])
    return sorted((tuple(sorted(block)) for block in uf.to_sets()), key=lambda b: b[0])


def ud_orbits(R):
    """Orbits of the group generated by u and d."""
    return orbits(R, [R.u, R.d])


def relabel(R, p):
    """Transport R along the bijection p: x -> p[x]."""
    n = R.n
    inv = invert(p)
    table = [[p[R.op(inv[a], inv[b])] for b in range(n)] for a in range(n)]
    u = compose(p, compose(R.u, inv))
    d = compose(p, compose(R.d, inv))
    return FiniteGLRack(FiniteRack(table), u, d)


# GL-structures


def _structure_candidates(rack):
    """Permutations commuting with every S_y and satisfying S_{p(y)} = S_y."""
    T = rack.array
    n = rack.n
    candidates = []
    for p in itertools.permutations(range(n)):
        perm = np.array(p)
        if np.array_equal(perm[T], T[perm, :]) and np.array_equal(T[:, perm], T):
            candidates.append(p)
    return candidates


def enumerate_gl_structures(rack, mode='all', cap=None):
    """Every GL-structure (u, d) on a rack.

    Args:
        rack: Valid FiniteRack
        mode: 'all' or 'u_equals_d'
        cap: Largest order searched; defaults to ORDER_CAP

    Returns:
        List of (u, d) pairs in lexicographic order
    """
    if mode not in ('all', 'u_equals_d'):
        raise DomainError(f'unknown mode {mode!r}')
    rack = _as_rack(rack)
    check_order(rack.n, cap)
    report = validate_rack(rack)
    if not report.ok:
        raise DomainError(f'not a rack: {report.violations[0]}', witness=report.violations[0].witness)

    candidates = _structure_candidates(rack)
    diag = [rack.op(x, x) for x in range(rack.n)]
    pairs = []
    for u in candidates:
        for d in candidates:
            if mode == 'u_equals_d' and u != d:
                continue
            if any(u[d[diag[x]]] != x or d[u[diag[x]]] != x for x in range(rack.n)):
                continue
            if validate_gl_rack(FiniteGLRack(rack, u, d)).ok:
                pairs.append((u, d))
    logger.info(f'{len(pairs)} GL-structures on order {rack.n} ({len(candidates)} candidate maps, mode={mode})')
    return pairs


def permutation_of_rack(rack):
    """The permutation sigma when x*y = sigma(x) for all y, otherwise None."""
    rack = _as_rack(rack)
    sigma = rack.column(0)
    if all(rack.column(y) == sigma for y in range(rack.n)):
        return sigma
    return None


def permutation_rack_relations(rack, u, d):
    """Which of the permutation-rack identities hold for the pair (u, d)."""
    sigma = permutation_of_rack(rack)
    if sigma is None:
        raise DomainError('rack is not a permutation rack')
    sigma_inv = invert(sigma)
    return {
        'du_is_sigma_inverse': compose(d, u) == sigma_inv,
        'ud_is_sigma_inverse': compose(u, d) == sigma_inv,
        'u_commutes_with_sigma': compose(u, sigma) == compose(sigma, u),
        'd_commutes_with_sigma': compose(d, sigma) == compose(sigma, d)
    }


# Named constructions


def trivial_gl_rack(n, u=None, d=None):
    """Trivial quandle T_n (x*y = x) with the given maps, identity by default."""
    return make_gl_rack([[x] * n for x in range(n)], u, d)


def permutation_rack(sigma):
    """Permutation rack x*y = sigma(x)."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise FormatError(f'{list(sigma)} is not a permutation')
    return FiniteRack([[sigma[x]] * len(sigma) for x in range(len(sigma))])


def translation_gl_rack(n, sigma, u, d):
    """Permutation rack on Z_n with x*y = x + sigma, u = +u and d = +d."""
    rack = permutation_rack([(x + sigma) % n for x in range(n)])
    return make_gl_rack(rack, [(x + u) % n for x in range(n)], [(x + d) % n for x in range(n)])


def dihedral_gl_rack(n):
    """Dihedral quandle R_n (x*y = 2y - x mod n) with identity maps."""
    return make_gl_rack([[(2 * y - x) % n for y in range(n)] for x in range(n)])


def alexander_gl_rack(n, t):
    """Alexander quandle on Z_n with x*y = t*x + (1 - t)*y, identity maps."""
    return make_gl_rack([[(t * x + (1 - t) * y) % n for y in range(n)] for x in range(n)])


def validate_group(table):
    """Check a multiplication table with identity 0.

    Args:
        table: n x n nested sequence

    Returns:
        The table as a tuple of tuples

    Raises:
        FormatError: the table is not a group with identity 0
    """
    rows = tuple(tuple(int(v) for v in row) for row in table)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise FormatError('group table must be square and non-empty')
    G = np.array(rows)
    if G.min() < 0 or G.max() >= n:
        raise FormatError('group table entry out of range')
    idx = np.arange(n)
    if not (np.array_equal(G[0], idx) and np.array_equal(G[:, 0], idx)):
        raise FormatError('element 0 is not the identity')
    bad = np.argwhere(G[G[:, :, None], idx[None, None, :]] != G[idx[:, None, None], G[None, :, :]])
    if bad.size:
        a, b, c = bad[0].tolist()
        raise FormatError(f'associativity fails at ({a}, {b}, {c})')
    for a in range(n):
        if 0 not in rows[a]:
            raise FormatError(f'element {a} has no inverse')
    return rows


def group_inverses(G):
    return tuple(row.index(0) for row in G)


def conjugation_gl_rack(G):
    """Conj(G): x*y = y^-1 x y with identity maps."""
    G = validate_group(G)
    inv = group_inverses(G)
    n = len(G)
    table = [[G[G[inv[y]][x]][y] for y in range(n)] for x in range(n)]
    return make_gl_rack(table)


def group_family_gl_rack(G, u_el, v_el, w_el):
    """x*y = y u y^-1 x with u(x) = x v and d(x) = x w.

    Args:
        G: Group table with identity 0
        u_el, v_el, w_el: Pairwise commuting elements with u v w = 1

    Returns:
        FiniteGLRack on the elements of G
    """
    G = validate_group(G)
    n = len(G)
    for name, a, b in (('u*v = v*u', u_el, v_el), ('u*w = w*u', u_el, w_el), ('v*w = w*v', v_el, w_el)):
        if not (0 <= a < n and 0 <= b < n):
            raise DomainError(f'element out of range in {name}')
        if G[a][b] != G[b][a]:
            raise DomainError(f'{name} fails', witness=(a, b))
    if G[G[u_el][v_el]][w_el] != 0:
        raise DomainError('u*v*w = 1 fails', witness=(u_el, v_el, w_el))
    inv = group_inverses(G)
    table = [[G[G[G[y][u_el]][inv[y]]][x] for y in range(n)] for x in range(n)]
    up = [G[x][v_el] for x in range(n)]
    down = [G[x][w_el] for x in range(n)]
    return make_gl_rack(table, up, down)


def inverse_gl_structure(R):
    """(X, *, u^-1, d^-1) for a GL-rack whose right translations are involutions."""
    for x in range(R.n):
        for y in range(R.n):
            if R.op(R.op(x, y), y) != x:
                raise DomainError(f'rack is not involutory: (x*y)*y != x at ({x}, {y})', witness=(x, y))
    return require_gl_rack(FiniteGLRack(R.rack, invert(R.u), invert(R.d)))


# Coset construction


def coset_labels(data):
    """Elements of the coset GL-rack as (index i, least element of the coset), in order."""
    G = data.group
    labels = []
    for i, H in enumerate(data.subgroups):
        reps = sorted({min(G[x][h] for h in H) for x in range(len(G))})
        labels.extend((i, rep) for rep in reps)
    return labels


def _check_coset_conditions(data):
    G = data.group
    inv = group_inverses(G)
    tau, mu = data.tau, data.mu

    def conj(a, h):
        return G[G[inv[a]][h]][a]

    for i, H in enumerate(data.subgroups):
        members = set(H)
        if 0 not in members:
            raise DomainError(f'H_{i} does not contain the identity', witness=(i,))
        for a in H:
            if inv[a] not in members:
                raise DomainError(f'H_{i} is not closed under inverses', witness=(i, a))
            for b in H:
                if G[a][b] not in members:
                    raise DomainError(f'H_{i} is not closed under products', witness=(i, a, b))
            if G[a][data.z[i]] != G[data.z[i]][a]:
                raise DomainError(f'H_{i} does not centralize z_{i}', witness=(i, a))

    subgroup_sets = [set(H) for H in data.subgroups]
    for i, H in enumerate(data.subgroups):
        z, r, s = data.z[i], data.r[i], data.s[i]
        for h in H:
            if conj(r, h) not in subgroup_sets[tau[i]]:
                raise DomainError(f'condition (1) fails at i={i}: r_i^-1 h r_i not in H_tau(i)', witness=(i, h))
            if conj(s, h) not in subgroup_sets[mu[i]]:
                raise DomainError(f'condition (2) fails at i={i}: s_i^-1 h s_i not in H_mu(i)', witness=(i, h))
        if G[G[z][r]][data.s[tau[i]]] not in subgroup_sets[i]:
            raise DomainError(f'condition (3) fails at i={i}: z_i r_i s_tau(i) not in H_i', witness=(i,))
        if G[G[z][s]][data.r[mu[i]]] not in subgroup_sets[i]:
            raise DomainError(f'condition (4) fails at i={i}: z_i s_i r_mu(i) not in H_i', witness=(i,))
        if G[z][r] != G[r][data.z[tau[i]]]:
            raise DomainError(f'condition (5) fails at i={i}: z_i r_i != r_i z_tau(i)', witness=(i,))
        if G[z][s] != G[s][data.z[mu[i]]]:
            raise DomainError(f'condition (6) fails at i={i}: z_i s_i != s_i z_mu(i)', witness=(i,))


def coset_gl_rack(data):
    """GL-rack on the disjoint union of the left coset spaces G/H_i.

    Args:
        data: CosetGLData satisfying the six coset conditions

    Returns:
        FiniteGLRack whose elements follow coset_labels(data)

    Raises:
        DomainError: a subgroup or numbered condition fails
    """
    G = validate_group(data.group)
    _check_coset_conditions(data)
    inv = group_inverses(G)
    labels = coset_labels(data)
    index = {}
    for k, (i, rep) in enumerate(labels):
        for h in data.subgroups[i]:
            index[(i, G[rep][h])] = k

    n = len(labels)
    table = [[0] * n for _ in range(n)]
    for a, (i, x) in enumerate(labels):
        for b, (j, y) in enumerate(labels):
            g = G[G[G[y][data.z[j]]][inv[y]]][x]
            table[a][b] = index[(i, g)]
    u = [index[(data.tau[j], G[x][data.r[j]])] for j, x in labels]
    d = [index[(data.mu[j], G[x][data.s[j]])] for j, x in labels]
    return require_gl_rack(FiniteGLRack(FiniteRack(table), u, d))


def homogeneous_representation(R, cap=None, group_cap=None):
    """Realise R on cosets of stabilisers in its automorphism group.

    Args:
        R: Valid FiniteGLRack
        cap: Order cap for the automorphism search
        group_cap: Largest automorphism group turned into a table

    Returns:
        Tuple (CosetGLData, iso) where iso[k] is the element of R matching the
        k-th coset of coset_labels(data)
    """
    auts = automorphism_group(R, cap)
    group_cap = resolve_cap(group_cap, 'GROUP_CAP')
    if len(auts) > group_cap:
        raise ResourceError(f'automorphism group of order {len(auts)} exceeds the cap {group_cap}')

    position = {p: a for a, p in enumerate(auts)}
    table = [[position[compose(p, q)] for q in auts] for p in auts]

    blocks = orbits(R, auts)
    orbit_of = {x: i for i, block in enumerate(blocks) for x in block}
    points = [block[0] for block in blocks]
    tau = [orbit_of[R.u[p]] for p in points]
    mu = [orbit_of[R.d[p]] for p in points]

    r = [next(a for a, g in enumerate(auts) if g[points[tau[i]]] == R.u[p]) for i, p in enumerate(points)]
    s = [next(a for a, g in enumerate(auts) if g[points[mu[i]]] == R.d[p]) for i, p in enumerate(points)]
    z = [position[inner_automorphism(R, p)] for p in points]
    subgroups = [[a for a, g in enumerate(auts) if g[p] == p] for p in points]

    data = CosetGLData(table, subgroups, z, r, s, tau)
    if data.mu != tuple(mu):
        raise DomainError('d does not permute orbits inversely to u')
    iso = tuple(auts[rep][points[i]] for i, rep in coset_labels(data))
    logger.info(f'homogeneous representation: |G|={len(auts)}, {len(points)} orbits')
    return data, iso
