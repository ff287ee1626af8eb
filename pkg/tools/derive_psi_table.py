"""Regenerate src/level17/data/psi_derived.json from q-expansions."""

import json
import sys
import time
from pathlib import Path

from level17.modeq import derive_psi_kernel

DEGREES = (5, 6, 7, 11, 13, 19, 23)

out = {}
for n in DEGREES:
    t0 = time.time()
    out[str(n)] = derive_psi_kernel(n).to_json()
    print(f"n={n}: {len(out[str(n)])} terms in {time.time() - t0:.1f}s", file=sys.stderr)

path = Path(__file__).resolve().parents[1] / "src" / "level17" / "data" / "psi_derived.json"
path.write_text(json.dumps(out, separators=(",", ":")) + "\n")
