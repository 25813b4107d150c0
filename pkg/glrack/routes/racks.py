"""Racks blueprint - axiom checks and homology over HTTP."""
from flask import Blueprint, jsonify, request

from glrack.routes import json_field, register_error_handlers
from glrack.services.algebra import require_gl_rack, validate_gl_rack, validate_rack
from glrack.services.homology import legendrian_cohomology, legendrian_homology
from glrack.utils.formats import parse_glrack

bp = Blueprint('racks', __name__, url_prefix='/racks')
register_error_handlers(bp)


@bp.route('/check', methods=['POST'])
def check():
    """Check the rack and GL-rack axioms.

    Body:
        rack: GL-rack in the glrack text format

    Returns:
        JSON with ok and the list of violations
    """
    body = request.get_json(silent=True)
    R = parse_glrack(json_field(body, 'rack'))
    report = validate_rack(R.rack)
    if report.ok:
        report = validate_gl_rack(R)
    data = report.to_dict()
    return jsonify({'ok': data['ok'], 'violations': data['violations']})


@bp.route('/homology', methods=['POST'])
def homology():
    """Legendrian homology (or cohomology with ``"cohomology": true``)."""
    body = request.get_json(silent=True)
    R = require_gl_rack(parse_glrack(json_field(body, 'rack')))
    degree = json_field(body, 'degree', int)
    coeff = json_field(body, 'coeff', int, default=0)
    if json_field(body, 'cohomology', bool, default=False):
        result = legendrian_cohomology(R, degree, coeff)
    else:
        result = legendrian_homology(R, degree, coeff)
    return jsonify(result.to_dict())
