# config.py
# Configuration constants for krigmorph

import os
from pathlib import Path

from dotenv import load_dotenv

# A .env next to the working directory or the project root can override defaults
load_dotenv()
load_dotenv(Path(__file__).parent.parent / ".env")

# Parametrization file format written and accepted by this version
FORMAT_VERSION = 1

# Suffix used for parametrization files
PARAM_SUFFIX = ".mprm"

# Prior variance below which a candidate is treated as fixed or exhausted
VARIANCE_FLOOR = 1e-12

# Residuals this far below zero are rounding noise and clamp to 0
NEGATIVE_VARIANCE_TOLERANCE = 1e-10

# Jitter ladder for Cholesky, relative to max(diag A)
JITTER_LADDER = (0.0, 1e-12, 1e-10, 1e-8)

# Significant digits used when writing floats as text (exact round-trip for float64)
FLOAT_DIGITS = 17

# Title line written into legacy VTK files
VTK_TITLE = os.environ.get("KRIGMORPH_VTK_TITLE", "krigmorph")
