"""Unit tests for the rack and diagram commands."""
from glrack.models import FiniteGLRack, FiniteRack, L, R, X
from glrack.services.algebra import trivial_gl_rack
from glrack.services.diagram import make_diagram, summary
from glrack.utils.formats import parse_diagram


def _not_gl_rack():
    return FiniteGLRack(FiniteRack([[0, 0], [1, 1]]), (1, 0), (0, 1))


def test_rack_check_ok(runner, rack_file, z4):
    """Test a valid GL-rack prints ok."""
    result = runner.invoke(args=['rack', 'check', rack_file(z4)])
    assert result.exit_code == 0
    assert result.output == 'ok\n'


def test_rack_check_lists_violations(runner, rack_file):
    """Test failed axioms are listed with exit code 1."""
    result = runner.invoke(args=['rack', 'check', rack_file(_not_gl_rack())])
    assert result.exit_code == 1
    assert result.output.startswith('invalid\n')
    assert 'violation: L1 at (0,)' in result.output

    not_a_rack = FiniteGLRack(FiniteRack([[1, 1], [1, 1]]), (0, 1), (0, 1))
    result = runner.invoke(args=['rack', 'check', rack_file(not_a_rack)])
    assert result.exit_code == 1
    assert 'column-bijectivity' in result.output


def test_format_errors_exit_with_two(runner, tmp_path):
    """Test unreadable files exit with code 2."""
    path = tmp_path / 'bad.glrack'
    path.write_text('glrack\nsize: 2\nop:\n0 0\n1 x\nu: 0 1\nd: 0 1\n')
    result = runner.invoke(args=['rack', 'check', str(path)])
    assert result.exit_code == 2
    assert 'FormatError: line 5, column 3' in result.output

    front = tmp_path / 'bad.front'
    front.write_text('front: L1 X2 R1\n')
    assert runner.invoke(args=['diagram', 'info', str(front)]).exit_code == 2


def test_rack_gl_structures(runner, rack_file):
    """Test the trivial quandle on two elements has two GL-structures."""
    result = runner.invoke(args=['rack', 'gl-structures', rack_file(trivial_gl_rack(2))])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[-1] == 'count: 2'
    assert lines[0].startswith('u: 0 1 d: 0 1')
    assert 'du=s^-1' in lines[0]


def test_rack_homology(runner, rack_file, r3):
    """Test homology, cohomology and a refused modulus."""
    path = rack_file(r3)
    assert runner.invoke(args=['rack', 'homology', path, '--degree', '3']).output == 'H_3 = Z/3\n'
    assert runner.invoke(args=['rack', 'homology', path, '--degree', '1', '--cohomology']).output == 'H^1 = Z\n'
    result = runner.invoke(args=['rack', 'homology', path, '--degree', '1', '--coeff', '1'])
    assert result.exit_code == 1
    assert 'DomainError' in result.output


def test_rack_homology_needs_gl_rack(runner, rack_file):
    """Test homology refuses a table failing the GL-axioms."""
    result = runner.invoke(args=['rack', 'homology', rack_file(_not_gl_rack()), '--degree', '1'])
    assert result.exit_code == 1
    assert 'not a GL-rack' in result.output


def test_rack_cocycles_emit(runner, rack_file, tmp_path):
    """Test cocycle generators are counted and written out."""
    out = tmp_path / 'cocycles'
    result = runner.invoke(args=['rack', 'cocycles', rack_file(trivial_gl_rack(2)), '--coeff', '2', '--emit', str(out)])
    assert result.exit_code == 0
    assert result.output == 'cocycles: 2\ncoboundaries: 0\n'
    assert sorted(p.name for p in out.iterdir()) == ['cocycle_0.cocycle', 'cocycle_1.cocycle']


def test_rack_envelope(runner, rack_file, t2_flip):
    """Test the swap structure leaves one free generator."""
    result = runner.invoke(args=['rack', 'envelope', rack_file(t2_flip)])
    assert result.exit_code == 0
    assert 'abelianization: Z\n' in result.output


def test_rack_homogeneous(runner, rack_file, r3):
    """Test the coset representation is printed and checked."""
    result = runner.invoke(args=['rack', 'homogeneous', rack_file(r3)])
    assert result.exit_code == 0
    keys = [line.split(':')[0] for line in result.output.splitlines()]
    assert keys == ['group order', 'orbits', 'stabilisers', 'z', 'r', 's', 'tau', 'iso']


def test_rack_census_emit(runner, tmp_path):
    """Test the order-2 census counts and files."""
    out = tmp_path / 'census'
    result = runner.invoke(args=['rack', 'census', '2', '--emit', str(out)])
    assert result.exit_code == 0
    assert result.output == 'racks: 2\nglracks: 4\n'
    assert len(list(out.glob('order2_*.glrack'))) == 4


def test_diagram_info(runner, diagram_file, trefoil):
    """Test the summary lines of the trefoil."""
    result = runner.invoke(args=['diagram', 'info', diagram_file(trefoil)])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert 'tb: 1' in lines
    assert 'r: 0' in lines
    assert 'crossings: 3' in lines


def test_diagram_color(runner, diagram_file, rack_file, u13, z4):
    """Test the coloring count and the listing."""
    args = ['diagram', 'color', diagram_file(u13), '--rack', rack_file(z4)]
    assert runner.invoke(args=args).output == 'colorings: 4\n'
    listed = runner.invoke(args=args + ['--list']).output.splitlines()
    assert len(listed) == 5


def test_diagram_statesum(runner, diagram_file, rack_file, tmp_path):
    """Test the Hopf link state sum with the linking cocycle."""
    hopf = make_diagram([L(1), L(3), X(2), X(2), R(3), R(1)], [1, 1])
    cocycle = tmp_path / 'link.cocycle'
    cocycle.write_text('cocycle\ncoeff: 2\n0 1 1\n')
    result = runner.invoke(args=['diagram', 'statesum', diagram_file(hopf), '--rack', rack_file(trivial_gl_rack(2)),
                                 '--cocycle', str(cocycle)])
    assert result.exit_code == 0
    assert result.output == 'statesum: 2 + 2*t\n'


def test_diagram_perturb(runner, diagram_file, trefoil):
    """Test perturbation is seeded and keeps the classical invariants."""
    args = ['diagram', 'perturb', diagram_file(trefoil), '--moves', '15', '--seed', '4']
    first = runner.invoke(args=args)
    assert first.exit_code == 0
    assert runner.invoke(args=args).output == first.output
    assert summary(parse_diagram(first.output))['tb'] == 1


def test_diagram_envelope(runner, diagram_file, u15):
    """Test the enveloping group of a zig-zag unknot."""
    result = runner.invoke(args=['diagram', 'envelope', diagram_file(u15)])
    assert 'abelianization: Z\n' in result.output


def test_diagram_presentation(runner, diagram_file, unknot):
    """Test the raw and simplified presentations."""
    path = diagram_file(unknot)
    lines = runner.invoke(args=['diagram', 'presentation', path]).output.splitlines()
    assert lines[0] == 'gens: x0 x1'
    assert sum(line.startswith('rel: ') for line in lines) == 2
    simplified = runner.invoke(args=['diagram', 'presentation', path, '--simplify']).output.splitlines()
    assert len(simplified[0].split()) == 2


def test_diagram_standard(runner):
    """Test standard fronts and the even-m refusal."""
    result = runner.invoke(args=['diagram', 'standard', 'trefoil'])
    assert result.output == 'front: L1 L3 X2 X2 X2 R3 R1\norient: +\n'
    result = runner.invoke(args=['diagram', 'standard', 'U(m,m)', '--m', '2'])
    assert result.exit_code == 1


def test_run_returns_exit_codes(capsys, rack_file, tmp_path):
    """Test the entry point reports 0, 1 and 2 without exiting."""
    from run import run

    assert run(['diagram', 'standard', 'trefoil']) == 0
    assert 'front: L1 L3 X2 X2 X2 R3 R1' in capsys.readouterr().out
    bad = FiniteGLRack(FiniteRack([[0, 0], [1, 1]]), (1, 0), (0, 1))
    assert run(['rack', 'check', rack_file(bad)]) == 1
    assert run(['rack', 'check', str(tmp_path / 'missing.glrack')]) == 2
    assert run(['rack', 'homology', rack_file(bad), '--degree', 'two']) == 2
