# Routes package initialization
from . import health, knots

blueprints = [
    health.bp,
    knots.bp
]


def register_blueprints(app):
    """Register all blueprints with the Flask app"""
    for blueprint in blueprints:
        app.register_blueprint(blueprint)
