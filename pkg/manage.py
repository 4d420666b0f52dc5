#!/usr/bin/env python
"""circuitgraph command-line entry point."""
import sys


def main():
    """Run circuitgraph commands."""
    try:
        from circuitgraph.cli import app
    except ImportError as exc:
        raise ImportError(
            "Couldn't import circuitgraph's dependencies. Are they installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    app(args=sys.argv[1:], prog_name='circuitgraph')


if __name__ == '__main__':
    main()
