"""Frames of finite spaces, their points, and spatiality.

Run with: python3 demos/02_frames_and_points.py
"""

from locfine import (
    frame_from_space,
    frame_iso,
    is_spatial,
    point_extent,
    points_of,
    validate_frame,
)
from locfine.frames import chain_frame, diamond_m3, space_sierpinski, space_six_opens

s = space_sierpinski()
print("Sierpinski space: points a, b with b open.")
fr = frame_from_space(s)
print("Its frame has", len(fr), "elements:", ", ".join(fr.elements))

ok, _ = frame_iso(fr, chain_frame(3))
print("It is the 3-chain:", ok)

pts = points_of(fr)
print("\nPoints are completely prime filters; this frame has", len(pts), "of them:")
for p in pts:
    print("  filter:", sorted(p.filter))

print("\nExtent of the open point {b}:",
      [sorted(q.filter) for q in point_extent(fr, "{b}")])

spatial, witness = is_spatial(fr)
print("Spatial (elements separated by points)?", spatial)

print("\nThe M3 diamond is a lattice but not a frame:")
report = validate_frame(diamond_m3())
print("  first violation:", report.violations[0])

six = frame_from_space(space_six_opens())
print("\nA 3-point T0 space with six opens is sober: frame points =",
      len(points_of(six)), ", space points = 3")
