"""Main entry point for the lscat toolkit.

Loads ``.env`` and hands the command line to the CLI router.
"""

import sys

from dotenv import load_dotenv

load_dotenv()

from cli.commands import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
