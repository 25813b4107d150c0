"""Application factory for the glrack toolkit."""
from flask import Flask

from config import config


def create_app(config_name='default'):
    """Create and configure the Flask application.

    Args:
        config_name: Configuration to use ('development', 'production', 'testing')

    Returns:
        Configured Flask application instance
    """
    app = Flask(__name__)
    app.config.from_object(config[config_name])
    app.logger.setLevel(app.config['LOG_LEVEL'])

    # Register blueprints
    from glrack.routes import diagrams, racks

    app.register_blueprint(racks.bp)
    app.register_blueprint(diagrams.bp)

    # Register CLI commands
    from glrack.utils import cli
    cli.register_commands(app)

    return app
