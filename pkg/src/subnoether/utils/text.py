"""Text and serialization helpers."""

import json
from typing import Any


def json_dumps(data: Any, *, indent: int | None = None) -> str:
    """Serialize data to a deterministic JSON string."""
    return json.dumps(data, ensure_ascii=False, indent=indent, sort_keys=True)


def truncate(value: str, *, max_len: int = 160) -> str:
    """Shorten long strings for one-line report output."""
    if len(value) <= max_len:
        return value
    return value[: max_len - 3] + "..."


__all__ = ["json_dumps", "truncate"]
