"""Input documents"""
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Union

from ssplocus.constant import UTF8

log = logging.getLogger(__name__)

STDIN = '-'


def assert_real_file(path: Union[str, Path]) -> Path:
    """Clean `path` and assert that it is an existing file."""
    real = Path(os.path.realpath(os.path.expanduser(str(path))))
    if not real.exists():
        raise FileNotFoundError(f'path {path} does not exist')
    if not real.is_file():
        raise OSError(f'path {path} is not a file')
    return real


def read_document(source: Union[str, Path]) -> Any:
    """Parse a JSON document from a file, or from stdin when `source` is "-"."""
    if str(source) == STDIN:
        log.debug("reading a JSON document from stdin")
        return json.load(sys.stdin)
    path = assert_real_file(source)
    log.debug("reading a JSON document from %s", path)
    with open(path, encoding=UTF8) as f:
        return json.load(f)
