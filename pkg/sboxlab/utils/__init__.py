from .logging_config import setup_logger
from .output_helpers import (
    dump_structured,
    format_csv,
    parse_hex_key,
    write_bytes_atomic,
    write_csv,
    write_text_atomic,
)

__all__ = [
    "setup_logger",
    "dump_structured",
    "format_csv",
    "parse_hex_key",
    "write_bytes_atomic",
    "write_csv",
    "write_text_atomic",
]
