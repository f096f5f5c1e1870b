from __future__ import annotations

import csv
import io
import json
import logging
import pathlib
import shutil
from collections.abc import Iterable, Sequence
from typing import Any

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """Floats in 17-significant-digit scientific notation; everything else via ``str``."""
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


class LocalFS:
    """Artifact directory of one scenario run; one file per task."""

    def __init__(self, base_dir: str | pathlib.Path):
        self.base = pathlib.Path(base_dir)
        self.base.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> pathlib.Path:
        return self.base / name

    def write_text(self, name: str, text: str) -> str:
        dst = self.path(name)
        dst.write_text(text, encoding="utf-8")
        logger.debug("wrote %s (%d bytes)", dst, len(text))
        return str(dst)

    def write_json(self, name: str, payload: Any) -> str:
        return self.write_text(name, json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n")

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
        return self.write_text(name, buffer.getvalue())

    async def fetch(self, source: str | pathlib.Path) -> tuple[str, str]:
        """Copy a local input file (e.g. the scenario config) next to the artifacts; return its path and text."""
        src = pathlib.Path(source)
        if not src.is_file():
            msg = f"no such file: {src}"
            raise FileNotFoundError(msg)
        dst = self.base / src.name
        if src.resolve() != dst.resolve():
            shutil.copyfile(src, dst)
        return str(dst), dst.read_text(encoding="utf-8")
