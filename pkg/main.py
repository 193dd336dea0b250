import logging
import sys

from trinomial_index.cli import main as cli_main
from trinomial_index.cli import setup_logging

__all__ = ["main", "setup_logging"]


def main() -> int:
    """Entry point for the trinomial-index command line."""
    try:
        return cli_main()
    except KeyboardInterrupt:
        logging.info("Received shutdown signal")
        return 1


if __name__ == "__main__":
    sys.exit(main())
