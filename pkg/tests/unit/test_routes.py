"""Unit tests for the JSON endpoints."""
from glrack.models import FiniteGLRack, FiniteRack
from glrack.utils.formats import write_glrack


def test_check_valid_rack(client, z4):
    """Test a valid GL-rack reports no violations."""
    response = client.post('/racks/check', json={'rack': write_glrack(z4)})
    assert response.status_code == 200
    assert response.get_json() == {'ok': True, 'violations': []}


def test_check_reports_violations(client):
    """Test failing axioms come back with witnesses."""
    R = FiniteGLRack(FiniteRack([[0, 0], [1, 1]]), (1, 0), (0, 1))
    data = client.post('/racks/check', json={'rack': write_glrack(R)}).get_json()
    assert data['ok'] is False
    assert {'axiom': 'L1', 'witness': [0]} in data['violations']


def test_check_format_error(client):
    """Test malformed input is a 400 with the error name."""
    response = client.post('/racks/check', json={'rack': 'glrack\nsize: two\n'})
    assert response.status_code == 400
    assert response.get_json()['error'] == 'FormatError'
    assert client.post('/racks/check', json={}).status_code == 400
    assert client.post('/racks/check', data='not json').status_code == 400


def test_homology(client, r3):
    """Test H_3 and H^1 of R_3."""
    text = write_glrack(r3)
    response = client.post('/racks/homology', json={'rack': text, 'degree': 3})
    assert response.status_code == 200
    assert response.get_json() == {'torsion': [3], 'rank': 0, 'text': 'Z/3'}
    data = client.post('/racks/homology', json={'rack': text, 'degree': 1, 'cohomology': True}).get_json()
    assert data['text'] == 'Z'


def test_homology_errors(client, r3):
    """Test bad field types are 400 and domain failures are 422."""
    text = write_glrack(r3)
    assert client.post('/racks/homology', json={'rack': text, 'degree': True}).status_code == 400
    assert client.post('/racks/homology', json={'rack': text, 'degree': '2'}).status_code == 400
    response = client.post('/racks/homology', json={'rack': text, 'degree': 1, 'coeff': 1})
    assert response.status_code == 422
    assert response.get_json()['error'] == 'DomainError'


def test_diagram_info(client, trefoil):
    """Test the trefoil summary over HTTP."""
    response = client.post('/diagrams/info', json={'diagram': trefoil.to_text()})
    assert response.status_code == 200
    assert response.get_json() == {'components': 1, 'crossings': 3, 'cusps': 4, 'writhe': 3, 'tb': 1, 'r': 0}


def test_diagram_color(client, u13, z4):
    """Test the coloring count and a non-GL-rack refusal."""
    body = {'diagram': u13.to_text(), 'rack': write_glrack(z4)}
    assert client.post('/diagrams/color', json=body).get_json() == {'colorings': 4}
    bad = FiniteGLRack(FiniteRack([[0, 0], [1, 1]]), (1, 0), (0, 1))
    response = client.post('/diagrams/color', json={'diagram': u13.to_text(), 'rack': write_glrack(bad)})
    assert response.status_code == 422
