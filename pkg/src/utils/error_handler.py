from functools import wraps
import traceback
from typing import Any, Callable, Optional, TypeVar

from src.utils.logger import get_logger

logger = get_logger()

T = TypeVar('T')


class ToolkitError(Exception):
    """Base class for every error the toolkit raises on purpose."""


class InputError(ToolkitError, ValueError):
    """
    Malformed or out-of-range input.

    Attributes:
        path: JSON location of the offending entry (e.g. ``nest[2]``), if known
        line: 1-based line number for text inputs, if known
    """

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        prefix = ""
        if path:
            prefix = f"{path}: "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(f"{prefix}{message}")


class ResourceCapError(ToolkitError, RuntimeError):
    """A configured cap (ball size, enumeration bound, vertex count, depth) was exceeded."""


class SearchBoundExceeded(ResourceCapError):
    """The isolating-collection candidate pool is larger than the exact search supports."""


def log_and_raise(exception: Exception, message: str) -> None:
    """
    Log an error message and raise the provided exception.

    Args:
        exception: The exception to raise
        message: The error message to log
    """
    logger.error(message)
    raise exception


def safe_operation(default_return: Optional[T] = None,
                   log_level: str = 'error',
                   raise_exception: bool = False) -> Callable:
    """
    Decorator for best-effort operations with standardized error handling.

    Args:
        default_return: Value returned when an exception occurs and raise_exception is False
        log_level: The logging level to use ('debug', 'info', 'warning', 'error', 'critical')
        raise_exception: Whether to re-raise the caught exception

    Returns:
        A decorator function
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            try:
                return func(*args, **kwargs)
            except Exception as e:
                error_message = f"Error in {func.__name__}: {str(e)}"
                log = getattr(logger, log_level, logger.error)
                log(error_message)
                if log_level == 'debug':
                    logger.debug(f"Exception details: {traceback.format_exc()}")
                if raise_exception:
                    raise
                return default_return
        return wrapper
    return decorator


def handle_file_operations(func: Callable) -> Callable:
    """
    Decorator for file readers and writers: logs the failure and re-raises.

    Args:
        func: The function to decorate

    Returns:
        A decorated function
    """
    def _path_of(args: tuple, kwargs: dict) -> str:
        return str(kwargs.get('path', '') or next(
            (arg for arg in args if isinstance(arg, str)), 'unknown file'))

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except FileNotFoundError as e:
            logger.error(f"File not found: {_path_of(args, kwargs)} - {str(e)}")
            raise
        except PermissionError as e:
            logger.error(f"Permission denied for file: {_path_of(args, kwargs)} - {str(e)}")
            raise
        except IOError as e:
            logger.error(f"I/O error in file operation: {str(e)}")
            raise
    return wrapper
