#!/usr/bin/env python3
"""Write the CSV data series behind every standard figure to a directory.

Usage: python scripts/make_figure_data.py [--out-dir out/figures]
"""

import argparse
from pathlib import Path

from jurylearn import FIGURE_IDS, figure_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out/figures", type=Path)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for fig_id in FIGURE_IDS:
        table = figure_table(fig_id)
        dest = args.out_dir / f"figure_{fig_id}.csv"
        dest.write_text(table.render())
        print(f"wrote {dest} ({len(table.rows)} rows x {len(table.header)} cols)")


if __name__ == "__main__":
    main()
