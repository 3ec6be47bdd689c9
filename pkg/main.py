"""Run the locpress CLI from a source checkout: `python main.py <command> ...`."""

import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
