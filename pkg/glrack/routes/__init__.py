"""JSON blueprints and their shared error handling."""
from flask import current_app, jsonify, request

from glrack.errors import FormatError, GLRackError


def register_error_handlers(bp):
    """Map glrack errors raised inside ``bp`` to JSON responses."""

    @bp.errorhandler(GLRackError)
    def handle_glrack_error(e):
        status = 400 if isinstance(e, FormatError) else 422
        current_app.logger.info(f'{request.path}: {type(e).__name__}: {e}')
        return jsonify({'error': type(e).__name__, 'message': str(e)}), status


def json_field(body, name, kind=str, default=None):
    """Field ``name`` of a request body, checked against ``kind``.

    Raises:
        FormatError: the field is missing (with no default) or has the wrong type
    """
    if not isinstance(body, dict):
        raise FormatError('request body must be a JSON object')
    if name not in body:
        if default is not None:
            return default
        raise FormatError(f'missing field {name!r}')
    value = body[name]
    if (kind is int and isinstance(value, bool)) or not isinstance(value, kind):
        raise FormatError(f'field {name!r} must be of type {kind.__name__}')
    return value
