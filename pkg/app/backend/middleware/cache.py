"""
Response cache for the knot API.
Invariant computations are pure functions of their request, so responses are
cached by route, query args and JSON body.
"""

import time
import hashlib
import logging
import functools
import threading
from typing import Any, Callable, Dict, Optional, Tuple

import ujson
from flask import Response, current_app, jsonify, request

logger = logging.getLogger(__name__)

# {key: (timestamp, data, ttl)}
_cache: Dict[str, Tuple[float, Any, int]] = {}
_cache_lock = threading.Lock()


def _get_cache_key(route: str, args: Dict[str, Any] = None, body: Any = None) -> str:
    """
    Generate a cache key based on the route, query args, and request body.

    Args:
        route: The route path
        args: Query arguments
        body: Request body

    Returns:
        str: A unique cache key
    """
    key_parts = {
        'route': route,
        'args': args or {},
        'body': body or {}
    }
    key_str = ujson.dumps(key_parts, sort_keys=True)
    return hashlib.md5(key_str.encode('utf-8')).hexdigest()


def _get_from_cache(key: str) -> Optional[Any]:
    with _cache_lock:
        entry = _cache.get(key)
        if entry is None:
            return None
        timestamp, data, ttl = entry
        if ttl > 0 and time.time() - timestamp > ttl:
            del _cache[key]
            return None
        return data


def _set_in_cache(key: str, data: Any, ttl: int) -> None:
    with _cache_lock:
        _cache[key] = (time.time(), data, ttl)


def _clear_expired_cache() -> int:
    """
    Clear expired cache entries.

    Returns:
        int: Number of entries cleared
    """
    current_time = time.time()
    with _cache_lock:
        expired = [key for key, (timestamp, _, ttl) in _cache.items()
                   if ttl > 0 and current_time - timestamp > ttl]
        for key in expired:
            del _cache[key]
    return len(expired)


def clear_cache() -> int:
    """
    Clear all cache entries.

    Returns:
        int: Number of entries cleared
    """
    with _cache_lock:
        count = len(_cache)
        _cache.clear()
    return count


def cache_route(ttl: Optional[int] = None):
    """
    Decorator to cache a JSON route response.

    Args:
        ttl: Time to live in seconds; None reads CACHE_TTL from the app config,
            0 disables caching

    Returns:
        Callable: Decorated function
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Response:
            lifetime = current_app.config.get('CACHE_TTL', 0) if ttl is None else ttl
            if not lifetime:
                return func(*args, **kwargs)

            cache_key = _get_cache_key(request.path, dict(request.args), request.get_json(silent=True))
            cached = _get_from_cache(cache_key)
            if cached is not None:
                logger.debug(f"Cache hit for {request.path}")
                return jsonify(cached)

            response = func(*args, **kwargs)
            if isinstance(response, Response) and response.status_code == 200 and response.is_json:
                _set_in_cache(cache_key, response.get_json(), lifetime)
            return response

        return wrapper

    return decorator


def start_cache_cleanup(interval: int = 3600) -> threading.Thread:
    """
    Start a background thread to periodically clean up expired cache entries.

    Args:
        interval: Cleanup interval in seconds

    Returns:
        threading.Thread: The cleanup thread
    """
    def cleanup_task():
        while True:
            time.sleep(interval)
            cleared = _clear_expired_cache()
            if cleared > 0:
                logger.info(f"Cleared {cleared} expired cache entries")

    thread = threading.Thread(target=cleanup_task, daemon=True)
    thread.start()
    return thread
