"""File and text helpers shared by the sboxlab commands."""

import csv
import io
import json
import os
import tempfile
from collections.abc import Iterable, Sequence
from pathlib import Path

import yaml

from sboxlab.errors import InvalidInputError

STRUCTURED_FORMATS = ("json", "yaml")


def _replace_atomically(path: Path, payload: bytes) -> Path:
    """Write payload to a temp file beside path, then rename over path."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_fd, tmp_path = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(tmp_fd, "wb") as f:
            f.write(payload)
        Path(tmp_path).replace(path)
    except Exception:
        # Clean up temp file on error
        try:
            Path(tmp_path).unlink(missing_ok=True)
        except OSError:
            pass
        raise
    return path


def write_text_atomic(path: str | Path, text: str) -> Path:
    """Write UTF-8 text with LF newlines atomically: temp file → rename."""
    return _replace_atomically(Path(path), text.encode("utf-8"))


def write_bytes_atomic(path: str | Path, data: bytes) -> Path:
    """Write raw bytes atomically (bitstreams are unadorned byte files)."""
    return _replace_atomically(Path(path), bytes(data))


def format_csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    """
    Render rows in the fixed CSV dialect.

    Comma separator, '.' decimal point, LF line ends, one header row.
    Floats use repr() so the text is locale-free and round-trips exactly.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=",", lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[object]],
) -> Path:
    """Write a CSV file in the fixed dialect (see format_csv)."""
    return write_text_atomic(path, format_csv(header, rows))


def dump_structured(data: object, fmt: str) -> str:
    """Serialize plain data as JSON (sorted keys) or block-style YAML."""
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "yaml":
        return yaml.safe_dump(data, default_flow_style=False, sort_keys=True, allow_unicode=True)
    raise InvalidInputError(f"unknown structured format: {fmt!r}")


def parse_hex_key(text: str, length: int) -> bytes:
    """
    Parse a hex key: case-insensitive, optional 0x prefix, exactly `length` bytes.

    Raises InvalidInputError on bad characters or wrong length.
    """
    raw = text.strip()
    if raw[:2].lower() == "0x":
        raw = raw[2:]
    if len(raw) != 2 * length:
        raise InvalidInputError(
            f"expected {2 * length} hex digits ({length} bytes), got {len(raw)}"
        )
    try:
        return bytes.fromhex(raw)
    except ValueError as exc:
        raise InvalidInputError(f"invalid hex key: {exc}") from exc
