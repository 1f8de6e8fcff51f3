"""
Health check endpoints for monitoring the application's status.
"""

import os
import time
import platform

import psutil
from flask import Blueprint, current_app, jsonify

from app.backend.catalog import load_catalog
from app.backend.middleware import track_performance
from app.backend.middleware.performance import get_route_metrics

bp = Blueprint('health', __name__, url_prefix='/api/health')


@bp.route('/', methods=['GET'])
@track_performance()
def health_check():
    """
    Basic health check endpoint.
    Returns status of the application and of the knot catalog.
    """
    try:
        catalog = load_catalog()
        catalog_status = {'status': 'ok', 'knots': len(catalog)}
    except Exception as e:
        catalog_status = {'status': 'error', 'error': str(e)}

    system_info = {
        'platform': platform.platform(),
        'python_version': platform.python_version(),
        'cpu_count': psutil.cpu_count(),
        'memory_total': psutil.virtual_memory().total,
        'memory_available': psutil.virtual_memory().available,
    }

    app_info = {
        'version': current_app.config.get('VERSION'),
        'uptime': time.time() - current_app.start_time if hasattr(current_app, 'start_time') else None,
        'environment': os.environ.get('KNOTSLICE_ENV', 'development'),
        'debug': current_app.debug,
        'kh_size_limit': current_app.config.get('KH_SIZE_LIMIT'),
        'threads': current_app.config.get('THREADS'),
    }

    return jsonify({
        'status': 'ok' if catalog_status['status'] == 'ok' else 'degraded',
        'timestamp': time.time(),
        'catalog': catalog_status,
        'system': system_info,
        'application': app_info
    })


@bp.route('/metrics', methods=['GET'])
@track_performance()
def metrics():
    """
    Performance metrics endpoint.
    Returns timings for all routes and engine computations, plus process usage.
    """
    process = psutil.Process(os.getpid())
    memory_info = process.memory_info()
    return jsonify({
        **get_route_metrics(),
        'process': {
            'memory_rss': memory_info.rss,
            'threads': process.num_threads(),
        }
    })
