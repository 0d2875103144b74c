"""`python -m polqubit` behaves exactly like the `sim` entry point."""
import sys

from .cli import main

sys.exit(main())
