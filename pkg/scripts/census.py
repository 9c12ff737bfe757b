#!/usr/bin/env python3
"""Orbit census: exact line-orbit sizes against both bounds, plus small
diameters.  Equivalent to `tsol census`; kept as a script for convenience.

Usage: python3 scripts/census.py [max_n] [--json]
"""
import sys

from tsol.cli import main

if __name__ == "__main__":
    args = ["census"]
    rest = sys.argv[1:]
    if rest and rest[0].isdigit():
        args += ["--max-n", rest.pop(0)]
    args += rest
    sys.exit(main(args))
