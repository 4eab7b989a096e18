"""python -m eqmarkov delegates to the CLI entry point."""

import sys

from .cli import main

sys.exit(main())
