"""Entry point for python -m subnoether."""

from subnoether.cli.main import cli

if __name__ == "__main__":
    cli()
