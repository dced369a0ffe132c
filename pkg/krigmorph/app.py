# app.py
# Entry point for the krigmorph command-line tool

import os
import sys

# Allow running as script or module
if __name__ == "__main__":
    if __package__ in (None, ""):
        # Add parent directory to path when running as script
        sys.path.insert(0, str(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

    from krigmorph.main import main

    sys.exit(main())
