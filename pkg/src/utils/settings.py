"""Environment-driven settings."""

import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional

from ..exceptions import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_ORDER_BOUND = 24
DEFAULT_CACHE_SIZE = 4096
DEFAULT_ISO_ATTEMPTS = 12

_order_bound_override: ContextVar[Optional[int]] = ContextVar("order_bound_override", default=None)


def _int_setting(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError as e:
        logger.error(f"Invalid {name}: '{raw}' is not a valid integer.")
        raise ConfigurationError(f"Invalid {name}: '{raw}' is not a valid integer.") from e
    if value <= 0:
        logger.error(f"Invalid {name}: {value} must be positive.")
        raise ConfigurationError(f"Invalid {name}: {value} must be positive.")
    return value


def get_order_bound() -> int:
    """Largest group order accepted by exhaustive enumerations.

    An active ``order_bound`` block wins over MACKEY_ORDER_BOUND.
    """
    override = _order_bound_override.get()
    if override is not None:
        return override
    return _int_setting("MACKEY_ORDER_BOUND", DEFAULT_ORDER_BOUND)


@contextmanager
def order_bound(bound: Optional[int]) -> Iterator[None]:
    """Use ``bound`` as the order bound inside the block; None keeps the environment value."""
    if bound is not None and bound <= 0:
        raise ConfigurationError(f"Invalid order bound: {bound} must be positive.")
    token = _order_bound_override.set(bound)
    try:
        yield
    finally:
        _order_bound_override.reset(token)


def get_cache_size() -> int:
    """Capacity of each memo cache (MACKEY_CACHE_SIZE)."""
    return _int_setting("MACKEY_CACHE_SIZE", DEFAULT_CACHE_SIZE)


def get_iso_attempts() -> int:
    """Number of candidate combinations tried when searching for an isomorphism."""
    return _int_setting("MACKEY_ISO_ATTEMPTS", DEFAULT_ISO_ATTEMPTS)


def get_log_level() -> str:
    return os.getenv("MACKEY_LOG_LEVEL", "WARNING").upper()
