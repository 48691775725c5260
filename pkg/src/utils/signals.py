"""Interrupt handling: drop partial outputs and exit with status failed."""

import logging
import signal
import sys
from typing import Callable, Optional

from ..config.models import RunStatus

logger = logging.getLogger(__name__)

HANDLED_SIGNALS = (signal.SIGINT, signal.SIGTERM)


def install_interrupt_cleanup(cleanup: Optional[Callable[[], None]] = None) -> None:
    """On SIGINT or SIGTERM run ``cleanup`` and exit with the failed exit code."""

    def handler(signum, frame):
        logger.warning("received %s, removing partial outputs", signal.Signals(signum).name)
        if cleanup is not None:
            cleanup()
        sys.exit(RunStatus.FAILED.exit_code)

    for signum in HANDLED_SIGNALS:
        signal.signal(signum, handler)
