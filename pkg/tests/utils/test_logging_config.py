"""Unit tests for sboxlab/utils/logging_config.py."""

import logging
import uuid
from unittest.mock import patch

import pytest

from sboxlab.utils.logging_config import setup_logger


@pytest.fixture
def logger_name():
    name = f"sboxlab.test.{uuid.uuid4().hex}"
    yield name
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)


class TestSetupLogger:
    def test_explicit_level(self, logger_name):
        logger = setup_logger(logger_name, log_level="debug")
        assert logger.level == logging.DEBUG

    def test_level_from_env(self, logger_name):
        with patch.dict("os.environ", {"LOG_LEVEL": "WARNING"}):
            logger = setup_logger(logger_name)
        assert logger.level == logging.WARNING

    def test_unknown_level_falls_back_to_info(self, logger_name):
        logger = setup_logger(logger_name, log_level="chatty")
        assert logger.level == logging.INFO

    def test_no_duplicate_handlers(self, logger_name):
        setup_logger(logger_name)
        logger = setup_logger(logger_name)
        assert len(logger.handlers) == 1

    def test_logs_to_stderr_only(self, logger_name, capsys):
        setup_logger(logger_name, log_level="INFO").info("construction finished")
        captured = capsys.readouterr()
        assert captured.out == ""
        assert f"[INFO] [{logger_name}] construction finished" in captured.err

    def test_file_handler(self, logger_name, tmp_path):
        log_file = tmp_path / "logs" / "sboxlab.log"
        logger = setup_logger(logger_name, log_level="INFO", log_file=log_file)
        logger.info("written to file")
        for handler in logger.handlers:
            handler.flush()
        assert len(logger.handlers) == 2
        assert "written to file" in log_file.read_text(encoding="utf-8")
