#!/usr/bin/env python3
"""Run the bundled example scenarios and render overlay figures.

Each config in configs/ writes its own CSV and SVG under figures/ (paths
are set inside the config files).  On top of those, this script overlays
the psi_18 runs into two comparison charts so the four environments can
be read off a single axis pair.
"""

import argparse
import sys
from pathlib import Path

from lindchain.runner import parse_config, run_scenario
from lindchain.svgplot import emit_svg_plot

REPO = Path(__file__).resolve().parent.parent


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--configs", default=str(REPO / "configs"),
                        help="directory of scenario configs")
    args = parser.parse_args(argv)

    config_dir = Path(args.configs)
    csv_paths = []
    for path in sorted(config_dir.glob("*.cfg")):
        cfg = parse_config(path.read_text(encoding="utf-8"))
        out = run_scenario(cfg)
        print(f"{path.name:<34} -> {out}")
        csv_paths.append(out)

    overlays = [p for p in csv_paths if p.stem != "psi18_big_dissipation"]
    if overlays:
        figures = overlays[0].parent
        for column in ("gme", "purity"):
            out = emit_svg_plot(overlays, [column], figures / f"overlay_{column}.svg")
            print(f"{'overlay':<34} -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
