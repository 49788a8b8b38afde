"""
On-disk JSON cache of indecomposable tables, keyed by quiver digest and field.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from .exactla import Field
from .modcat import RepCategory
from .quiver import Quiver
from .reps import Representation

log = logging.getLogger(__name__)

ENV_VAR = "TORSIONLAB_CACHE"
VERSION = 1


def cache_key(quiver: Quiver, field: Field) -> str:
    return f"{quiver.digest()}:{field.name}"


def resolve_path(explicit: str | None, input_path: str | None) -> Path | None:
    """``--cache`` beats the environment variable, which beats a file next to the input."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    if input_path:
        return Path(input_path).with_suffix(".cache.json")
    return None


def _read(path: Path) -> dict:
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return {"version": VERSION, "entries": {}}
    if not isinstance(data, dict) or data.get("version") != VERSION:
        return {"version": VERSION, "entries": {}}
    data.setdefault("entries", {})
    return data


def _write(path: Path, data: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_category(quiver: Quiver, field: Field, path: Path | None) -> RepCategory:
    """Category with its indecomposable table taken from the cache when valid."""
    if path is None:
        return RepCategory(quiver, field)
    data = _read(path)
    key = cache_key(quiver, field)
    entry = data["entries"].get(key)
    if entry is not None:
        try:
            table = [Representation.from_lists(quiver, field, r["dims"], r["maps"]) for r in entry["indecs"]]
            cat = RepCategory(quiver, field, table)
            if all(cat.hom_dims[i][i] == 1 for i in range(cat.size)):
                return cat
        except Exception as exc:  # stale or hand-edited entry: rebuild
            log.warning("ignoring cache entry %s: %s", key, exc)
    cat = RepCategory(quiver, field)
    data["entries"][key] = {"indecs": [r.to_lists() for r in cat.indecs]}
    try:
        _write(path, data)
    except OSError as exc:
        log.warning("could not write cache %s: %s", path, exc)
    return cat
