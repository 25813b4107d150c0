"""Pytest configuration."""
import pytest

from glrack import create_app
from glrack.models import L, R, X
from glrack.services.algebra import dihedral_gl_rack, translation_gl_rack, trivial_gl_rack
from glrack.services.diagram import make_diagram, standard_diagram
from glrack.utils.formats import write_glrack


@pytest.fixture(scope='session')
def app():
    """Create application for testing."""
    app = create_app('testing')
    return app


@pytest.fixture
def client(app):
    """Create test client."""
    return app.test_client()


@pytest.fixture
def runner(app):
    """Create CLI runner."""
    return app.test_cli_runner()


@pytest.fixture
def z4():
    """Translation GL-rack on Z_4 with x*y = x+2, u = d = +1."""
    return translation_gl_rack(4, 2, 1, 1)


@pytest.fixture
def z9():
    """Translation GL-rack on Z_9 with x*y = x+3, u = +1, d = +5."""
    return translation_gl_rack(9, 3, 1, 5)


@pytest.fixture
def t2_flip():
    """Trivial quandle on two elements with u = d = the swap."""
    return trivial_gl_rack(2, (1, 0), (1, 0))


@pytest.fixture
def r3():
    """Dihedral quandle R_3 with identity maps."""
    return dihedral_gl_rack(3)


@pytest.fixture
def unknot():
    """U(1,1): the single-zig-zag unknot."""
    return standard_diagram('U(1,2m-1)', 1)


@pytest.fixture
def u13():
    return standard_diagram('U(1,2m-1)', 2)


@pytest.fixture
def u33():
    return standard_diagram('U(m,m)', 3)


@pytest.fixture
def u15():
    return standard_diagram('U(1,2m-1)', 3)


@pytest.fixture
def trefoil():
    """Legendrian trefoil with tb = 1."""
    return standard_diagram('trefoil')


@pytest.fixture
def hopf():
    """Two-component Legendrian Hopf link, both components oriented '+'."""
    return make_diagram([L(1), L(3), X(2), X(2), R(3), R(1)], [1, 1])


@pytest.fixture
def rack_file(tmp_path):
    """Write a GL-rack to a .glrack file and return its path."""

    def write(R, name='rack.glrack'):
        path = tmp_path / name
        path.write_text(write_glrack(R))
        return str(path)

    return write


@pytest.fixture
def diagram_file(tmp_path):
    """Write a front to a .front file and return its path."""

    def write(D, name='knot.front'):
        path = tmp_path / name
        path.write_text(D.to_text())
        return str(path)

    return write
