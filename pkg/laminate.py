#!/usr/bin/env python3
"""
Laminate - command-line front end

Admissibility, stress-equality roots, two-phase meshes and scans for an
isotropic energy that is not rank-one convex.
"""
import os
import sys

# Add current directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.operations.runner import main


if __name__ == "__main__":
    sys.exit(main())
