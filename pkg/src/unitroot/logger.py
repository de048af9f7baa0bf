"""
Component loggers.

All workbench loggers hang under ``unitroot`` and share one rich handler on
stderr, so stdout stays clean for emitted JSON/CSV. Each component gets its
own color, taken from the ``logging`` section of config.yml.
"""

import logging
from typing import Dict, Optional

from rich.console import Console
from rich.logging import RichHandler

ROOT_NAME = "unitroot"

_colors: Dict[str, str] = {}
_configured = False


class ComponentFormatter(logging.Formatter):
    """Prefix each message with its colored component name."""

    def format(self, record: logging.LogRecord) -> str:
        component = record.name.split(".", 1)[-1] if "." in record.name else "base"
        color = _colors.get(component, _colors.get("base", "white"))
        message = super().format(record)
        return f"[{color}]{component}[/{color}] {message}"


def configure_logging(
    level: str = "INFO",
    colors: Optional[Dict[str, str]] = None,
    rich_tracebacks: bool = False,
    show_traceback_locals: bool = False,
) -> None:
    """Install (or reinstall) the rich handler on the package root logger."""
    global _configured

    _colors.clear()
    _colors.update(colors or {})

    root = logging.getLogger(ROOT_NAME)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = RichHandler(
        console=Console(stderr=True),
        markup=True,
        show_path=False,
        rich_tracebacks=rich_tracebacks,
        tracebacks_show_locals=show_traceback_locals,
    )
    handler.setFormatter(ComponentFormatter("%(message)s"))
    root.addHandler(handler)
    root.setLevel(level.upper())
    root.propagate = False
    _configured = True


def get_logger(component: str) -> logging.Logger:
    """Logger for one workbench component (e.g. ``get_logger("lfun")``)."""
    if not _configured:
        configure_logging()
    return logging.getLogger(f"{ROOT_NAME}.{component}")
