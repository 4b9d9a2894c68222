#!/usr/bin/env python3
"""
Gonality Census Entry Point
===========================

Command-line entry point: classification queries, orthogonal groups, the
census, point counts and the verification battery.
"""

import sys
from pathlib import Path

# Project root on the path so the src package resolves
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
