"""
S-Box text formats.

Grid form: 16 rows of 16 two-digit uppercase hex tokens, space separated,
LF after every row. Structured form: a JSON or YAML mapping
{"name": ..., "table": [256 hex strings or ints]}, or a bare list.
"""

import logging
import re
from pathlib import Path

import yaml

from sboxlab.errors import MalformedTokenError, SBoxFormatError, WrongCountError
from sboxlab.sbox.sbox import SBOX_SIZE, SBox
from sboxlab.utils.output_helpers import dump_structured, write_text_atomic

logger = logging.getLogger(__name__)

GRID_WIDTH = 16
_HEX_TOKEN = re.compile(r"^(?:0[xX])?[0-9A-Fa-f]{1,2}$")


def _to_byte(token: object, position: int) -> int:
    if isinstance(token, bool):
        raise MalformedTokenError(f"token {position} is not a byte value: {token!r}")
    if isinstance(token, int):
        if 0 <= token < SBOX_SIZE:
            return token
        raise MalformedTokenError(f"token {position} out of byte range: {token}")
    text = str(token).strip()
    if not _HEX_TOKEN.match(text):
        raise MalformedTokenError(f"token {position} is not a hex byte: {text!r}")
    return int(text, 16)


def _check_count(values: list) -> None:
    if len(values) != SBOX_SIZE:
        raise WrongCountError(f"expected {SBOX_SIZE} S-Box entries, got {len(values)}")


def parse_grid(text: str, name: str = "") -> SBox:
    """Parse whitespace separated hex tokens (the 16x16 grid layout)."""
    tokens = text.split()
    values = [_to_byte(tok, i) for i, tok in enumerate(tokens)]
    _check_count(values)
    return SBox(tuple(values), name)


def parse_structured(text: str, name: str = "") -> SBox:
    """Parse the JSON/YAML list form. JSON is a YAML subset, so one loader covers both."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SBoxFormatError(f"unreadable structured S-Box: {exc}") from exc
    if isinstance(data, dict):
        name = str(data.get("name", name) or name)
        data = data.get("table")
    if not isinstance(data, list):
        raise SBoxFormatError("structured S-Box must be a list or a mapping with a 'table' list")
    values = [_to_byte(tok, i) for i, tok in enumerate(data)]
    _check_count(values)
    return SBox(tuple(values), name)


def parse_sbox(text: str, name: str = "") -> SBox:
    """Parse either form, choosing by the first non-blank character."""
    head = text.lstrip()[:1]
    if head in ("[", "{", "-") or re.match(r"^\s*(name|table)\s*:", text):
        return parse_structured(text, name)
    return parse_grid(text, name)


def format_grid(s: SBox) -> str:
    rows = []
    for r in range(0, SBOX_SIZE, GRID_WIDTH):
        rows.append(" ".join(f"{v:02X}" for v in s.table[r : r + GRID_WIDTH]))
    return "\n".join(rows) + "\n"


def format_structured(s: SBox, fmt: str = "json") -> str:
    return dump_structured({"name": s.name, "table": [f"{v:02X}" for v in s.table]}, fmt)


def serialize_sbox(s: SBox, fmt: str = "grid") -> str:
    if fmt == "grid":
        return format_grid(s)
    return format_structured(s, fmt)


def read_sbox(path: str | Path) -> SBox:
    p = Path(path)
    logger.debug("reading S-Box from %s", p)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise SBoxFormatError(f"{p}: not UTF-8 text ({exc.reason})") from exc
    except OSError as exc:
        raise SBoxFormatError(f"cannot read {p}: {exc.strerror or exc}") from exc
    return parse_sbox(text, name=p.stem)


def write_sbox(path: str | Path, s: SBox, fmt: str = "grid") -> Path:
    return write_text_atomic(path, serialize_sbox(s, fmt))

