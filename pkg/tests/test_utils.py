"""Tests for the small helpers under subnoether.utils."""

import logging

from subnoether.utils.logging import PACKAGE_LOGGER, setup_logging
from subnoether.utils.suggest import suggest
from subnoether.utils.text import json_dumps, truncate


def test_json_dumps_sorts_keys():
    assert json_dumps({"b": 1, "a": [2, 3]}) == '{"a": [2, 3], "b": 1}'


def test_truncate():
    assert truncate("abcdef", max_len=10) == "abcdef"
    assert truncate("abcdef", max_len=5) == "ab..."


def test_suggest_needs_a_close_match():
    assert suggest("vort2", ["vort2d", "vort3d", "nls"]) == "vort2d"
    assert suggest("zzz", ["u", "v"]) is None
    assert suggest("u", []) is None


def test_setup_logging_moves_package_threshold():
    package = logging.getLogger(PACKAGE_LOGGER)
    try:
        setup_logging(verbose=True)
        assert package.level == logging.DEBUG
        setup_logging()
        assert package.level == logging.WARNING
    finally:
        package.setLevel(logging.NOTSET)
