#!/usr/bin/env python3
"""Render the recorded spectral-sequence pages to SVG files.

    python scripts/render_charts.py --out-dir charts --min-n 5 --max-n 13
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mackey.chart import golden_page, render_svg, validate_differentials


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="charts")
    ap.add_argument("--min-n", type=int, default=5)
    ap.add_argument("--max-n", type=int, default=13)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for n in range(args.min_n, args.max_n + 1):
        page = golden_page("Q8", n)
        path = out / f"q8_n{n}.svg"
        path.write_text(render_svg(page))
        report = validate_differentials(page)
        status = "consistent" if report.ok else f"flags: {report.violations}"
        print(f"wrote {path} ({len(page.differentials)} differentials; {status})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
