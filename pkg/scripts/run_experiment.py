#!/usr/bin/env python3
"""Thin wrapper so experiments can run without installing the console script.

Usage mirrors the package CLI, e.g.:

    python scripts/run_experiment.py fig4 --delta 0.9 --out out/fig4
"""

import sys

from nhssh.cli import main

if __name__ == "__main__":
    sys.exit(main())
