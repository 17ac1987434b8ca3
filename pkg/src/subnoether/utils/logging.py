"""Logging configuration for the command line.

Reports own stdout, so records only ever reach stderr.
"""

import logging

PACKAGE_LOGGER = "subnoether"

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
LOG_FORMAT_SIMPLE = "%(levelname)s | %(message)s"


def setup_logging(verbose: bool = False, simple: bool = False) -> None:
    """Send records to stderr and set the package threshold.

    The threshold is WARNING, or DEBUG with ``verbose``. Calling again only
    moves the threshold, so a subcommand flag can raise what the group set.
    """
    logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT_SIMPLE if simple else LOG_FORMAT)
    logging.getLogger(PACKAGE_LOGGER).setLevel(logging.DEBUG if verbose else logging.WARNING)


__all__ = ["PACKAGE_LOGGER", "LOG_FORMAT", "LOG_FORMAT_SIMPLE", "setup_logging"]
