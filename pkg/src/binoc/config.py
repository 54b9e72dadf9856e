"""Resource caps for Groebner and witness computations.

Values are module-level so callers (and the CLI) can adjust them; the only
environment hook is ``BINOC_MAX_DEGREE``.
"""

import os

MAX_BASIS_SIZE = 10_000
MAX_DEGREE = int(os.environ.get("BINOC_MAX_DEGREE", "64"))

# extra rounds of deepening allowed before a decomposition gives up
DEEPENING_ROUNDS = 3

# release builds skip the iterated-collapse cross check in soccular_closure
CROSS_CHECK = True
