#!/usr/bin/env python3
"""Emit a synthetic Manhattan-grid city as a geodata JSON fixture.

Square blocks separated by streets, deterministic pseudo-random building
heights, and a valid region covering the full extent. Coordinates are meters
in a local east/north frame centered on the origin.

Usage: make_grid_fixture.py extent_m pitch_m street_m seed output.json
"""

import json
import sys


def lcg(seed):
    state = seed & 0xFFFFFFFF
    while True:
        state = (1103515245 * state + 12345) & 0x7FFFFFFF
        yield state / 0x7FFFFFFF


def main():
    if len(sys.argv) != 6:
        sys.exit(__doc__)
    extent = float(sys.argv[1])
    pitch = float(sys.argv[2])
    street = float(sys.argv[3])
    seed = int(sys.argv[4])
    out_path = sys.argv[5]

    half = extent / 2.0
    side = pitch - street
    rnd = lcg(seed)
    heights = [8.0, 12.0, 18.0, 25.0, 35.0, 50.0]

    features = []
    features.append(
        {
            "type": "Feature",
            "properties": {"kind": "valid_region"},
            "geometry": {
                "type": "Polygon",
                "coordinates": [
                    [[-half, -half], [half, -half], [half, half], [-half, half], [-half, -half]]
                ],
            },
        }
    )

    n = int(extent // pitch)
    offset = -half + (extent - n * pitch + street) / 2.0
    for i in range(n):
        for j in range(n):
            x0 = offset + i * pitch
            y0 = offset + j * pitch
            h = heights[int(next(rnd) * len(heights)) % len(heights)]
            features.append(
                {
                    "type": "Feature",
                    "properties": {"kind": "building", "height_m": h},
                    "geometry": {
                        "type": "Polygon",
                        "coordinates": [
                            [
                                [x0, y0],
                                [x0 + side, y0],
                                [x0 + side, y0 + side],
                                [x0, y0 + side],
                                [x0, y0],
                            ]
                        ],
                    },
                }
            )

    doc = {
        "type": "FeatureCollection",
        "area_km2": (extent / 1000.0) ** 2,
        "origin": "synthetic grid fixture (%gm extent, %gm pitch, %gm streets, seed %d)"
        % (extent, pitch, street, seed),
        "features": features,
    }
    with open(out_path, "w") as f:
        json.dump(doc, f)
        f.write("\n")
    print("wrote %s: %d buildings" % (out_path, len(features) - 1))


if __name__ == "__main__":
    main()
