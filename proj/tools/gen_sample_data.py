#!/usr/bin/env python3
"""Writes a small synthetic AIS corpus, label sidecar and ground map."""
import argparse
import csv
import json
import math
from pathlib import Path

R = 6371000.0
ORIGIN = (63.40, 10.40)


def unproject(x, y):
    lat = ORIGIN[0] + math.degrees(y / R)
    lon = ORIGIN[1] + math.degrees(x / (R * math.cos(math.radians(ORIGIN[0]))))
    return lat, lon


def track(x0, y0, cog_deg, sog, t_end, dt):
    c = math.radians(cog_deg)
    for k in range(int(t_end / dt) + 1):
        t = k * dt
        yield t, x0 + sog * math.sin(c) * t, y0 + sog * math.cos(c) * t, sog, cog_deg % 360.0


ENCOUNTERS = [
    ("ho1", "head-on", (0, 0, 0, 6), (150, 6000, 180, 6)),
    ("ho2", "head-on", (0, 0, 0, 5), (-250, 5500, 180, 5)),
    ("ot1", "overtaking", (0, 0, 0, 8), (600, 1500, 0, 4)),
    ("ot2", "overtaking", (0, 0, 0, 8), (-900, 1200, 0, 3)),
    ("cr1", "crossing", (0, 0, 0, 6), (-3000, 3500, 90, 6)),
    ("cr2", "crossing", (0, 0, 0, 6), (3200, 3000, 270, 6)),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", type=Path)
    a = ap.parse_args()
    a.outdir.mkdir(parents=True, exist_ok=True)
    with open(a.outdir / "corpus.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["encounter_id", "role", "mmsi", "timestamp", "lat", "lon", "sog_mps", "cog_deg"])
        for eid, _, ref, obs in ENCOUNTERS:
            for role, mmsi, (x0, y0, cog, sog) in (("reference", 257000001, ref), ("obstacle", 257000002, obs)):
                for t, x, y, s, c in track(x0, y0, cog, sog, 900.0, 10.0):
                    lat, lon = unproject(x, y)
                    w.writerow([eid, role, mmsi, f"{t:.1f}", f"{lat:.9f}", f"{lon:.9f}", f"{s:.3f}", f"{c:.3f}"])
    with open(a.outdir / "corpus.labels.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["encounter_id", "label"])
        for eid, label, _, _ in ENCOUNTERS:
            w.writerow([eid, label])
    island = [(-900, 1800), (-500, 1800), (-500, 2600), (-900, 2600), (-900, 1800)]
    shore = [(700, 2500), (1200, 2500), (1200, 4500), (700, 4500), (700, 2500)]
    feats = []
    for ring in (island, shore):
        coords = [[round(unproject(x, y)[1], 9), round(unproject(x, y)[0], 9)] for x, y in ring]
        feats.append({"type": "Feature", "properties": {}, "geometry": {"type": "Polygon", "coordinates": [coords]}})
    (a.outdir / "map.geojson").write_text(json.dumps({"type": "FeatureCollection", "features": feats}, indent=1) + "\n")


if __name__ == "__main__":
    main()
