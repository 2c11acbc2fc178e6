"""Module entrypoint for `python -m hyperbisect`."""

from hyperbisect.cli import main

if __name__ == "__main__":
    main()
