"""Entry point for running fpdpm as a module."""

from .cli import app


def main() -> None:
    """Main entry point for the fpdpm CLI application."""
    app()


if __name__ == "__main__":
    main()
