"""CLI commands for glrack."""
import functools
import os

import click
from flask import current_app
from flask.cli import AppGroup

from glrack.errors import FormatError, GLRackError


class CommandError(click.ClickException):
    """Domain or resource failure reported with exit code 1."""
    exit_code = 1


class FormatCommandError(click.ClickException):
    """Unreadable input reported with exit code 2."""
    exit_code = 2


def reported(f):
    """Turn glrack errors raised by a command into click exceptions."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except FormatError as e:
            current_app.logger.info(f'{f.__name__}: format error: {e}')
            raise FormatCommandError(f'FormatError: {e}')
        except GLRackError as e:
            current_app.logger.info(f'{f.__name__}: {type(e).__name__}: {e}')
            raise CommandError(f'{type(e).__name__}: {e}')

    return wrapper


def _perm(p):
    return ' '.join(str(v) for v in p)


def _load_rack(file, checked=True):
    from glrack.services.algebra import require_gl_rack
    from glrack.utils.formats import parse_glrack

    R = parse_glrack(file.read())
    return require_gl_rack(R) if checked else R


def _load_diagram(file):
    from glrack.utils.formats import parse_diagram
    return parse_diagram(file.read())


def _echo_group(P):
    from glrack.services.presentation import abelianization, collapse_ud

    collapsed = collapse_ud(P)
    click.echo(f'gens: {" ".join(collapsed.generators)}')
    click.echo(f'rels: {", ".join(collapsed.format_relator(r) for r in collapsed.relators)}')
    click.echo(f'abelianization: {abelianization(collapsed)}')


def register_commands(app):
    """Register the rack and diagram command groups with the Flask app."""

    rack = AppGroup('rack', help='Finite GL-racks and their invariants.')
    diagram = AppGroup('diagram', help='Front diagrams of Legendrian links.')

    @rack.command('check')
    @click.argument('file', type=click.File('r'))
    @reported
    def rack_check(file):
        """Check the rack and GL-rack axioms."""
        from glrack.services.algebra import validate_gl_rack, validate_rack

        R = _load_rack(file, checked=False)
        report = validate_rack(R.rack)
        if report.ok:
            report = validate_gl_rack(R)
        if report.ok:
            click.echo('ok')
            return
        click.echo('invalid')
        for violation in report.violations:
            click.echo(f'violation: {violation}')
        click.get_current_context().exit(1)

    @rack.command('gl-structures')
    @click.argument('file', type=click.File('r'))
    @click.option('--mode', type=click.Choice(['all', 'u_equals_d']), default='all',
                  help='Enumerate every pair or only u = d')
    @reported
    def rack_gl_structures(file, mode):
        """List every GL-structure on the underlying rack."""
        from glrack.services.algebra import enumerate_gl_structures, permutation_of_rack, permutation_rack_relations

        R = _load_rack(file, checked=False)
        pairs = enumerate_gl_structures(R.rack, mode=mode)
        is_permutation = permutation_of_rack(R.rack) is not None
        for u, d in pairs:
            line = f'u: {_perm(u)} d: {_perm(d)}'
            if is_permutation:
                relations = permutation_rack_relations(R.rack, u, d)
                if relations['du_is_sigma_inverse']:
                    line += ' du=s^-1'
                if relations['ud_is_sigma_inverse']:
                    line += ' ud=s^-1'
            click.echo(line)
        click.echo(f'count: {len(pairs)}')

    @rack.command('homology')
    @click.argument('file', type=click.File('r'))
    @click.option('--degree', type=int, required=True, help='Degree n')
    @click.option('--coeff', type=int, default=0, help='Coefficient modulus (0 for Z)')
    @click.option('--cohomology', is_flag=True, help='Compute cohomology instead')
    @reported
    def rack_homology(file, degree, coeff, cohomology):
        """Legendrian homology or cohomology of a GL-rack."""
        from glrack.services.homology import legendrian_cohomology, legendrian_homology

        R = _load_rack(file)
        current_app.logger.info(f'rack homology: order {R.n}, degree {degree}, coeff {coeff}')
        if cohomology:
            click.echo(f'H^{degree} = {legendrian_cohomology(R, degree, coeff)}')
        else:
            click.echo(f'H_{degree} = {legendrian_homology(R, degree, coeff)}')

    @rack.command('cocycles')
    @click.argument('file', type=click.File('r'))
    @click.option('--coeff', type=int, required=True, help='Coefficient modulus m >= 2')
    @click.option('--emit', type=click.Path(file_okay=False), default=None,
                  help='Directory for cocycle_<i>.cocycle files')
    @reported
    def rack_cocycles(file, coeff, emit):
        """Generators of the 2-cocycles and 2-coboundaries over Z_m."""
        from glrack.services.homology import coboundary_space_2, cocycle_space_2
        from glrack.utils.formats import write_cocycle

        R = _load_rack(file)
        cocycles = cocycle_space_2(R, coeff)
        coboundaries = coboundary_space_2(R, coeff)
        click.echo(f'cocycles: {len(cocycles)}')
        click.echo(f'coboundaries: {len(coboundaries)}')
        if emit:
            os.makedirs(emit, exist_ok=True)
            for i, phi in enumerate(cocycles):
                with open(os.path.join(emit, f'cocycle_{i}.cocycle'), 'w') as out:
                    out.write(write_cocycle(R, phi))
            current_app.logger.info(f'wrote {len(cocycles)} cocycle files to {emit}')

    @rack.command('envelope')
    @click.argument('file', type=click.File('r'))
    @reported
    def rack_envelope(file):
        """Enveloping group of a GL-rack, collapsed and abelianized."""
        from glrack.services.presentation import env_of_gl_rack

        _echo_group(env_of_gl_rack(_load_rack(file)))

    @rack.command('homogeneous')
    @click.argument('file', type=click.File('r'))
    @reported
    def rack_homogeneous(file):
        """Coset representation of a GL-rack inside its automorphism group."""
        from glrack.services.algebra import coset_gl_rack, coset_labels, homogeneous_representation, is_isomorphism

        R = _load_rack(file)
        data, iso = homogeneous_representation(R)
        click.echo(f'group order: {data.order}')
        representatives = [iso[k] for k, (_, rep) in enumerate(coset_labels(data)) if rep == 0]
        click.echo(f'orbits: {_perm(representatives)}')
        click.echo(f'stabilisers: {" ".join(str(len(h)) for h in data.subgroups)}')
        click.echo(f'z: {_perm(data.z)}')
        click.echo(f'r: {_perm(data.r)}')
        click.echo(f's: {_perm(data.s)}')
        click.echo(f'tau: {_perm(data.tau)}')
        click.echo(f'iso: {_perm(iso)}')
        if not is_isomorphism(coset_gl_rack(data), R, iso):
            raise CommandError('coset GL-rack is not isomorphic to the input')

    @rack.command('census')
    @click.argument('n', type=int)
    @click.option('--emit', type=click.Path(file_okay=False), default=None,
                  help='Directory for the .glrack files')
    @reported
    def rack_census(n, emit):
        """Count racks and GL-racks of order N up to isomorphism."""
        from glrack.services.census import enumerate_gl_racks, enumerate_racks
        from glrack.utils.formats import write_glrack

        racks = enumerate_racks(n)
        gl_racks = enumerate_gl_racks(n)
        click.echo(f'racks: {len(racks)}')
        click.echo(f'glracks: {len(gl_racks)}')
        if emit:
            os.makedirs(emit, exist_ok=True)
            for i, R in enumerate(gl_racks):
                with open(os.path.join(emit, f'order{n}_{i}.glrack'), 'w') as out:
                    out.write(write_glrack(R))
            current_app.logger.info(f'wrote {len(gl_racks)} GL-rack files to {emit}')

    @diagram.command('info')
    @click.argument('file', type=click.File('r'))
    @reported
    def diagram_info(file):
        """Component count, crossings, cusps and classical invariants."""
        from glrack.services.diagram import summary

        for key, value in summary(_load_diagram(file)).items():
            click.echo(f'{key}: {value}')

    @diagram.command('color')
    @click.argument('file', type=click.File('r'))
    @click.option('--rack', 'rack_file', type=click.File('r'), required=True, help='GL-rack file')
    @click.option('--list', 'show', is_flag=True, help='Print every coloring')
    @reported
    def diagram_color(file, rack_file, show):
        """Count colorings of a front by a GL-rack."""
        from glrack.services.presentation import count_colorings, iter_colorings

        D = _load_diagram(file)
        R = _load_rack(rack_file)
        click.echo(f'colorings: {count_colorings(D, R)}')
        if show:
            for coloring in iter_colorings(D, R):
                click.echo(_perm(coloring))

    @diagram.command('statesum')
    @click.argument('file', type=click.File('r'))
    @click.option('--rack', 'rack_file', type=click.File('r'), required=True, help='GL-rack file')
    @click.option('--cocycle', 'cocycle_file', type=click.File('r'), required=True, help='Cocycle file')
    @reported
    def diagram_statesum(file, rack_file, cocycle_file):
        """Cocycle state sum in Z[Z_m]."""
        from glrack.services.homology import make_cocycle
        from glrack.services.statesum import state_sum
        from glrack.utils.formats import parse_cocycle

        D = _load_diagram(file)
        R = _load_rack(rack_file)
        m, values = parse_cocycle(cocycle_file.read())
        click.echo(f'statesum: {state_sum(D, R, make_cocycle(R, m, values))}')

    @diagram.command('perturb')
    @click.argument('file', type=click.File('r'))
    @click.option('--moves', type=int, required=True, help='Number of random moves')
    @click.option('--seed', type=int, required=True, help='Random seed')
    @reported
    def diagram_perturb(file, moves, seed):
        """Apply seeded random Legendrian moves."""
        from glrack.services.moves import random_moves

        result = random_moves(_load_diagram(file), moves, seed)
        click.echo(result.to_text(), nl=False)

    @diagram.command('envelope')
    @click.argument('file', type=click.File('r'))
    @reported
    def diagram_envelope(file):
        """Enveloping group of the GL-rack of a front."""
        from glrack.services.presentation import env_of_presentation, gl_presentation

        _echo_group(env_of_presentation(gl_presentation(_load_diagram(file))))

    @diagram.command('presentation')
    @click.argument('file', type=click.File('r'))
    @click.option('--simplify', is_flag=True, help='Eliminate defined generators')
    @reported
    def diagram_presentation(file, simplify):
        """GL-rack presentation read off a front."""
        from glrack.services.presentation import gl_presentation, simplify_presentation

        P = gl_presentation(_load_diagram(file))
        if simplify:
            P = simplify_presentation(P)
        click.echo(f'gens: {" ".join(P.generators)}')
        for rel in P.relations:
            click.echo(f'rel: {rel}')

    @diagram.command('standard')
    @click.argument('name')
    @click.option('--m', 'm', type=int, default=1, help='Parameter m')
    @reported
    def diagram_standard(name, m):
        """Print a standard front: U(1,2m-1), U(m,m) or trefoil."""
        from glrack.services.diagram import standard_diagram

        click.echo(standard_diagram(name, m).to_text(), nl=False)

    app.cli.add_command(rack)
    app.cli.add_command(diagram)
