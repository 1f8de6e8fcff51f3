"""
Middleware components for the knot engine API.
Provides response caching, performance monitoring and error handling.
"""

from .cache import cache_route, clear_cache, start_cache_cleanup
from .performance import (track_performance, track_computation, get_route_metrics, reset_metrics,
                          setup_performance_monitoring)
from .error_handler import setup_error_handlers, handle_error
