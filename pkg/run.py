#!/usr/bin/env python3
"""
Startup script for the RA loop workbench.
Loads environment variables and hands the arguments to the command line.
"""

import sys
from dotenv import load_dotenv

# Load environment variables before settings are read
load_dotenv()

from cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
