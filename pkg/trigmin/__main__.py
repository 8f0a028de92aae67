"""Entry point to run as package."""
import sys

from .trigmin import main

sys.exit(main())
