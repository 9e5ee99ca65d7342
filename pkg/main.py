"""
Command-line entry point.

Usage: python main.py <command> (--input PATH | --gen SPEC) [options]; see ``python main.py --help``.
For the orchestrated corpus run use main_orchestrated.py instead.
"""

import sys

from src.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
