"""Render the shipped scenarios to SVG Minkowski diagrams."""

import os

from relcheck.diagram import render_svg
from relcheck.model import Scenario

here = os.path.dirname(__file__)
out_dir = os.path.join(here, "out")
os.makedirs(out_dir, exist_ok=True)

for name in ("tau", "diamond", "ftl"):
    scenario = Scenario.load(os.path.join(here, "scenarios", f"{name}.json"))
    svg = render_svg(scenario, "t-x1")
    path = os.path.join(out_dir, f"{name}.svg")
    with open(path, "w") as fh:
        fh.write(svg)
    print(f"wrote {path} ({len(svg)} bytes, {svg.count('<line')} line elements)")

print("open them in any browser; signals are dashed, worldlines solid")
