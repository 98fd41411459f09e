import functools
import logging
from ..errors import ConfigError, NumericalError, VerificationError


exitCodes = {
    ConfigError: 2,
    NumericalError: 3,
    VerificationError: 4,
}


def exitCodeOnError(func):
    """Wraps a command function into a try/except that logs the known
    qconfine errors instead of raising them, and returns the matching exit
    code. Anything else propagates.

    The wrapped function returns 0 when the command itself returns None.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            result = func(*args, **kwargs)
        except tuple(exitCodes) as e:
            for errorClass, code in exitCodes.items():
                if isinstance(e, errorClass):
                    break
            logging.error("%s: %s", func.__name__, e)
            return code
        return 0 if result is None else result

    return wrapper
