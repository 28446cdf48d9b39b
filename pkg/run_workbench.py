#!/usr/bin/env python3
"""
Start the Monoid Workbench CLI

Run this script from the repository root:

    python run_workbench.py verify --suite remark-4-4 --max-order 3
"""

import sys
from pathlib import Path


def main():
    """Put src/ on the path and hand over to the typer app"""
    src_path = Path(__file__).parent / "src"
    if str(src_path) not in sys.path:
        sys.path.insert(0, str(src_path))

    from cli import app

    app()


if __name__ == "__main__":
    main()
