#!/usr/bin/env python3
"""
opcontour

Main entry point that launches the contour-integral solver CLI.

Usage:
    # Certify operator classes
    python opcontour.py classify demos/strip_zero.json

    # Solve a Cauchy problem
    python opcontour.py solve demos/schrodinger_t.json
    python opcontour.py solve demos/wave_constant.json --allow-trace-warnings

    # Run the verification matrix
    python opcontour.py verify demos/verify_all.json --threads 4
    python opcontour.py --list-checks
"""

import sys
import os

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from src.opcontour import main

if __name__ == "__main__":
    sys.exit(main())
