from __future__ import annotations

import logging

_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def configure_logging(level: int | str = logging.WARNING) -> None:
    """Install one stream handler on the package logger."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    root = logging.getLogger("src")
    root.setLevel(level)
    if not any(getattr(h, "_imin", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_FORMAT, datefmt="%H:%M:%S"))
        handler._imin = True  # type: ignore[attr-defined]
        root.addHandler(handler)
