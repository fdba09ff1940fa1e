"""
Teq toolchain
=============

Command-line entry point for the annotated-language checker, the
call-by-value evaluator, the translation into the first-order theory W'
and the W' proof checker.

Subcommands:
------------
1. check      - typecheck every ``check`` directive of a ``.teqt`` file
2. eval       - erase and evaluate every ``eval`` directive
3. erase      - print the erasure of every definition
4. translate  - write the W' obligations of ``obligation`` directives to ``.obl``
5. wp-check   - check a ``.wp`` proof script

Exit status: 0 success, 1 rejected check or proof, 2 parse or usage error.
"""

import sys

from app.cli import run


if __name__ == "__main__":
    sys.exit(run())
