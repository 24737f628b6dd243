"""
Timestamped stderr logger shared by every module
"""

import sys
from datetime import datetime, timezone

from config import CFG


class Logger:
    """Simple levelled logger; one tag per module"""

    debug_enabled = CFG.debug_mode

    @staticmethod
    def log(msg: str, level: str = "INFO", tag: str = "CORE"):
        if level == "DEBUG" and not Logger.debug_enabled:
            return
        timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S")
        print(f"[{timestamp}] [{level}] [{tag}] {msg}", file=sys.stderr, flush=True)

    @staticmethod
    def set_debug(enabled: bool):
        """Toggle DEBUG output (CLI --debug)"""
        Logger.debug_enabled = bool(enabled)


__all__ = ['Logger']
