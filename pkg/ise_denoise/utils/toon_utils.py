"""TOON (Token Oriented Object Notation) utility functions.

Command summaries printed by the CLI go through ``format_response`` so they are
compact TOON text by default and plain JSON when TOON output is disabled.
"""

import json
from typing import Any

import toon_format

from ise_denoise.src.settings import settings


def to_toon(data: dict | list | str | int | float | bool | None) -> str:
    r"""Convert Python data structure to TOON format string.

    Args:
        data: Python object to convert (dict, list, or primitive types)

    Returns:
        str: TOON-formatted string representation

    Examples:
        >>> to_toon({"status": "success", "rows": 42})
        'status: success\nrows: 42'
    """
    return toon_format.encode(data)


def from_toon(toon_str: str) -> dict | list | str | int | float | bool | None:
    r"""Parse TOON format string back to Python data structure.

    Args:
        toon_str: TOON-formatted string

    Returns:
        Python object (dict, list, or primitive type)
    """
    return toon_format.decode(toon_str)


def format_response(data: Any, enable_toon: bool | None = None) -> str:
    """Render a command summary as text.

    Args:
        data: Summary to render (typically a dict with a ``status`` key)
        enable_toon: Override for ``ENABLE_TOON_FORMAT``

    Returns:
        TOON text if enabled, otherwise indented JSON with sorted keys
    """
    use_toon = settings.ENABLE_TOON_FORMAT if enable_toon is None else enable_toon
    if use_toon:
        return to_toon(data)
    return json.dumps(data, indent=2, sort_keys=True)
