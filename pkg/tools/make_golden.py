"""Regenerate tests/data/golden_counts.json from the brute-force oracle.

Usage: python tools/make_golden.py [MAX_SIZE]
"""

import json
import sys
from pathlib import Path

from tomonoid.generator import brute_force, tally

max_size = int(sys.argv[1]) if len(sys.argv) > 1 else 6
out = {
    "source": "brute_force oracle",
    "counts": {str(k): tally(brute_force(k, cap=max_size))._asdict() for k in range(1, max_size + 1)},
}
path = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden_counts.json"
path.write_text(json.dumps(out, indent=2) + "\n")
print(f"wrote {path}")
