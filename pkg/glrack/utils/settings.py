"""Access to configuration from library code."""
from flask import current_app, has_app_context

from config import Config
from glrack.errors import ResourceError


def setting(name):
    """Read a setting from the active app, falling back to the base config.
    
    Args:
        name: Configuration key, e.g. 'ORDER_CAP'
        
    Returns:
        The configured value
    """
    if has_app_context():
        return current_app.config.get(name, getattr(Config, name))
    return getattr(Config, name)


def resolve_cap(value, name):
    """Return an explicit cap, or the configured one when value is None."""
    return setting(name) if value is None else value


def check_order(n, cap=None):
    """Refuse an exhaustive search over a rack of order n above ORDER_CAP.

    Raises:
        ResourceError: n exceeds the cap
    """
    cap = resolve_cap(cap, 'ORDER_CAP')
    if n > cap:
        raise ResourceError(f'order {n} exceeds the search cap {cap} (set GLR_CAP to raise it)')
