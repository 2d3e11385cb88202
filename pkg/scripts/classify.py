"""
Entry point for the classification toolkit command line.
This file has no business logic and acts as a clean runner.
It makes the project importable, hands the arguments to the command module
and exits with the code that module computes from the verdict.

Usage:
    python scripts/classify.py <subcommand> [options]

Run ``python scripts/classify.py --help`` for the list of subcommands.
"""

import sys
from pathlib import Path

# Add the project root to the Python path so that ``src.`` imports resolve
PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.modules.commands.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
