"""Entry point for the glrack command line and development server."""
import os
import sys

import click
from flask.cli import FlaskGroup

from glrack import create_app

app = create_app(os.getenv('FLASK_ENV', 'development'))
cli = FlaskGroup(create_app=lambda: app)


def run(argv=None):
    """Run one command line and return its exit code.

    Args:
        argv: Arguments after the program name, e.g. ['rack', 'check', 'R.glrack']

    Returns:
        0 on success, 1 on a domain or resource failure, 2 on unreadable input or bad usage
    """
    try:
        rv = cli.main(args=argv, prog_name='glrack', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == '__main__':
    sys.exit(run())
