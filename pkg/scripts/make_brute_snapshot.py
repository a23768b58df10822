"""Regenerate the brute-engine reference scans for the fig2a and fig2c presets.

    python scripts/make_brute_snapshot.py [--outdir tests/data]

fig2c needs a ~13500-point source grid and takes roughly 15 s with numba.
"""

import argparse
import os

from ghostlight.experiments import compute_scan, preset
from ghostlight.experiments.export import scan_csv, write_text

NAMES = ("fig2a", "fig2c")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default=os.path.join(os.path.dirname(__file__), "..", "tests", "data"))
    args = parser.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    for name in NAMES:
        path = os.path.join(args.outdir, f"{name}_brute.csv")
        write_text(path, scan_csv(compute_scan(preset(name), "brute")))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
