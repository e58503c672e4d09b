#!/usr/bin/env python3
"""
Command line entry point for ``python -m na_bounds``.
"""

from na_bounds.cli import cli_main


def main() -> None:
    cli_main()


if __name__ == "__main__":
    main()
