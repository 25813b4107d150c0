"""Diagrams blueprint - classical invariants and coloring counts over HTTP."""
from flask import Blueprint, jsonify, request

from glrack.routes import json_field, register_error_handlers
from glrack.services.algebra import require_gl_rack
from glrack.services.diagram import summary
from glrack.services.presentation import count_colorings
from glrack.utils.formats import parse_diagram, parse_glrack

bp = Blueprint('diagrams', __name__, url_prefix='/diagrams')
register_error_handlers(bp)


@bp.route('/info', methods=['POST'])
def info():
    """Components, crossings, cusps, writhe, tb and r of a front."""
    body = request.get_json(silent=True)
    return jsonify(summary(parse_diagram(json_field(body, 'diagram'))))


@bp.route('/color', methods=['POST'])
def color():
    """Number of colorings of a front by a GL-rack.

    Body:
        diagram: Front in the diagram text format
        rack: GL-rack in the glrack text format
    """
    body = request.get_json(silent=True)
    D = parse_diagram(json_field(body, 'diagram'))
    R = require_gl_rack(parse_glrack(json_field(body, 'rack')))
    return jsonify({'colorings': count_colorings(D, R)})
