import logging
import time

from flask import Flask
from flask_cors import CORS

from app.backend.config import get_config, setup_logging

logger = logging.getLogger(__name__)


def create_app(test_config=None):
    """Create and configure the Flask application."""
    config_class = get_config('testing' if test_config and test_config.get('TESTING') else None)
    setup_logging(log_dir=config_class.LOG_DIR)

    app = Flask(__name__, instance_relative_config=True)
    app.config.from_object(config_class)
    if test_config is not None:
        app.config.update(test_config)

    CORS(app, origins=app.config['ALLOWED_ORIGINS'].split(','), supports_credentials=True)

    from .routes import register_blueprints
    register_blueprints(app)

    app.start_time = time.time()

    from app.backend.middleware.performance import setup_performance_monitoring
    setup_performance_monitoring(app)

    from app.backend.middleware.error_handler import setup_error_handlers
    setup_error_handlers(app)

    if not app.config.get('TESTING') and app.config.get('CACHE_TTL'):
        from app.backend.middleware.cache import start_cache_cleanup
        start_cache_cleanup()

    logger.info("app created", extra={'blueprints': sorted(app.blueprints), 'testing': app.config.get('TESTING', False)})
    return app
