"""
Base management command with uniform exception handling.
Converts toolkit exceptions to JSON error records and process exit codes.
"""

import logging
import traceback

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from .exceptions import NoisyWiresException, NumericalException
from .records import dumps

logger = logging.getLogger(__name__)


class NoisyWiresCommand(BaseCommand):
    """
    Command base class that catches and formats exceptions consistently.

    Subclasses implement ``run(*args, **options)`` instead of ``handle``.
    Exit codes: 0 success, 1 acceptance failure, 2 usage/validation, 3 numerical failure.
    """

    def handle(self, *args, **options):
        try:
            return self.run(*args, **options)
        except CommandError:
            raise
        except Exception as exc:
            raise self.handle_exception(exc) from exc

    def run(self, *args, **options):  # pragma: no cover - abstract
        raise NotImplementedError("subclasses of NoisyWiresCommand must provide a run() method")

    def handle_exception(self, exc: Exception) -> CommandError:
        """Report exception on stderr and map it to a CommandError with the right exit code."""
        self.log_exception(exc)

        if isinstance(exc, NoisyWiresException):
            self.stderr.write(dumps(exc.to_dict()))
            return CommandError(exc.message, returncode=exc.exit_code)
        if isinstance(exc, (ArithmeticError, ValueError)):
            wrapped = NumericalException(f"{type(exc).__name__}: {exc}")
            self.stderr.write(dumps(wrapped.to_dict()))
            return CommandError(wrapped.message, returncode=wrapped.exit_code)
        return self.handle_unexpected_error(exc)

    def handle_unexpected_error(self, exc: Exception) -> CommandError:
        message = "An unexpected error occurred"
        if settings.DEBUG:
            message = f"{message}: {exc}\n{traceback.format_exc()}"
        self.stderr.write(message)
        return CommandError(message, returncode=3)

    def log_exception(self, exc: Exception):
        log_message = f"{self.__module__.rsplit('.', 1)[-1]} failed: {type(exc).__name__}: {exc}"
        if isinstance(exc, NoisyWiresException):
            if exc.exit_code >= 3:
                logger.error(log_message)
            else:
                logger.warning(log_message)
        else:
            logger.exception(log_message, exc_info=exc)
