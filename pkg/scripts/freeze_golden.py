#!/usr/bin/env python3
"""
Regenerate the golden Hilbert numerator of wLGr(3,6) at mu=(1,0,0), u=2.
Run it after a deliberate change to the series code and review the diff.
"""

import json
import sys
from pathlib import Path

from dotenv import load_dotenv

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

load_dotenv()

from wflag.cli.verify import GOLDEN_CY_LGR36, load_golden  # noqa: E402
from wflag.services.catalog import get_entry, make_weighted  # noqa: E402
from wflag.utils.rationals import format_numerator, format_rational  # noqa: E402

MU = (1, 0, 0)
U = 2


def compute():
    """Compute the numerator record from the Weyl character formula."""
    v = make_weighted(get_entry("lgr36"), MU, U)
    return v, {
        "variety": "lgr36",
        "mu": list(MU),
        "u": U,
        "ambient_weights": list(v.ambient_weights),
        "canonical_degree": v.canonical_degree,
        "numerator": [[e, format_rational(c)] for e, c in v.series.numerator.coefficients()],
    }


def write(record, path=GOLDEN_CY_LGR36):
    """Write the record, reporting whether the numerator changed."""
    if path.exists():
        old = load_golden(path)
        new = dict((e, c) for e, c in record["numerator"])
        changed = {e: format_rational(c) for e, c in old.coefficients()} != new
        print(f"ℹ️  Existing golden file {'differs' if changed else 'is unchanged'}")
    path.write_text(json.dumps(record, indent=2) + "\n")
    print(f"✅ Wrote {path}")


if __name__ == "__main__":
    print("=" * 60)
    print("🚀 Freezing golden numerator for wLGr(3,6) mu=(1,0,0) u=2")
    print("=" * 60)

    try:
        variety, record = compute()
        print(f"Ambient weights: {record['ambient_weights']}")
        print(f"K = O({record['canonical_degree']})")
        print(f"Numerator: {format_numerator(variety.series.numerator.coefficients())}")
        write(record)
    except Exception as e:
        print(f"\n❌ Error while freezing: {e}")
        sys.exit(1)
