"""
Performance monitoring for API routes and engine computations.
Tracks timings and logs slow requests and slow computations.
"""

import time
import logging
import functools
import threading
from contextlib import contextmanager
from typing import Any, Callable, Dict, Iterator, List, Optional

from flask import g, has_request_context, request

from app.backend.config import Config

logger = logging.getLogger(__name__)

# {route or computation: [seconds]}
_metrics: Dict[str, List[float]] = {}
_metrics_lock = threading.Lock()

DEFAULT_SLOW_THRESHOLD = 1.0
MAX_SAMPLES = 100


def _record(name: str, elapsed_time: float) -> None:
    with _metrics_lock:
        times = _metrics.setdefault(name, [])
        times.append(elapsed_time)
        if len(times) > MAX_SAMPLES:
            del times[:-MAX_SAMPLES]


def _summary(name: str, times: List[float]) -> Dict[str, Any]:
    return {
        'route': name,
        'count': len(times),
        'avg_time': sum(times) / len(times) if times else 0,
        'min_time': min(times) if times else 0,
        'max_time': max(times) if times else 0
    }


def track_performance(slow_threshold: float = DEFAULT_SLOW_THRESHOLD):
    """
    Decorator to track the performance of a Flask route.

    Args:
        slow_threshold: Threshold in seconds for logging slow requests

    Returns:
        Callable: Decorated function
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            start_time = time.time()
            g.tracking_performance = True
            result = func(*args, **kwargs)
            elapsed_time = time.time() - start_time
            _record(request.endpoint or request.path, elapsed_time)
            if elapsed_time > slow_threshold:
                logger.warning(f"Slow request: {request.method} {request.path} took {elapsed_time:.2f}s")
            return result

        return wrapper

    return decorator


@contextmanager
def track_computation(name: str, slow_threshold: Optional[float] = None, **fields) -> Iterator[None]:
    """
    Time an engine computation and record it under ``computation:<name>``.

    Args:
        name: Computation name, e.g. ``khovanov``
        slow_threshold: Seconds before a warning is logged (default SLOW_COMPUTATION_SECONDS)
        fields: Extra structured fields for the log record
    """
    threshold = Config.SLOW_COMPUTATION_SECONDS if slow_threshold is None else slow_threshold
    start_time = time.time()
    try:
        yield
    finally:
        elapsed_time = time.time() - start_time
        _record(f'computation:{name}', elapsed_time)
        if has_request_context():
            g.computation_time = getattr(g, 'computation_time', 0.0) + elapsed_time
        if elapsed_time > threshold:
            logger.warning("slow computation", extra={'computation': name, 'seconds': round(elapsed_time, 3),
                                                      **fields})


def get_route_metrics(route: str = None) -> Dict[str, Any]:
    """
    Get performance metrics for a specific route or all routes.

    Args:
        route: The route to get metrics for, or None for all routes

    Returns:
        Dict: Performance metrics
    """
    with _metrics_lock:
        if route is not None:
            return _summary(route, list(_metrics.get(route, [])))
        return {'routes': [_summary(r, list(times)) for r, times in _metrics.items()]}


def reset_metrics() -> None:
    """Reset all performance metrics."""
    with _metrics_lock:
        _metrics.clear()


def setup_performance_monitoring(app):
    """
    Set up performance monitoring for a Flask app.

    Args:
        app: The Flask app
    """
    @app.before_request
    def before_request():
        g.start_time = time.time()

    @app.after_request
    def after_request(response):
        if hasattr(g, 'computation_time'):
            response.headers['X-Computation-Time'] = f"{g.computation_time:.6f}s"
        if getattr(g, 'tracking_performance', False):
            return response

        if hasattr(g, 'start_time'):
            elapsed_time = time.time() - g.start_time
            _record(request.endpoint or request.path, elapsed_time)
            if elapsed_time > DEFAULT_SLOW_THRESHOLD:
                logger.warning(f"Slow request: {request.method} {request.path} took {elapsed_time:.2f}s")
            response.headers['X-Response-Time'] = f"{elapsed_time:.6f}s"

        return response
