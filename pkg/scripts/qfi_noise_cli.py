#!/usr/bin/env python3
"""
qfi-noise command line tool

Reproduces the mean QFI reference table, writes fidelity curves, checks the GHZ5
populations, runs the invariant suite and dumps sampled Hamiltonians.

Examples:
    python scripts/qfi_noise_cli.py table1
    python scripts/qfi_noise_cli.py curve --state ghz4_2 --mode collective --seed 7 --out results
    python scripts/qfi_noise_cli.py validate --seed 20190101
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
