#!/usr/bin/env python3
"""Convert an OSM building export (GeoJSON, lon/lat) to the local geodata format.

Expects a FeatureCollection of building polygons, e.g. from an Overpass query
exported with osmtogeojson or `osmium export`. Heights come from the `height`
tag when present, else `building:levels` * 3 m, else a 10 m default. Longitude
and latitude are projected to a local east/north meter frame about the dataset
centroid (equirectangular; fine at city scale). The valid region is the
bounding rectangle of all footprints.

Usage: osm_to_geodata.py input.geojson output.json
"""

import json
import math
import sys

EARTH_RADIUS = 6371000.0


def parse_height(props):
    h = props.get("height") or props.get("building:height")
    if h:
        try:
            return float(str(h).replace("m", "").strip())
        except ValueError:
            pass
    levels = props.get("building:levels") or props.get("levels")
    if levels:
        try:
            return max(3.0, float(levels) * 3.0)
        except ValueError:
            pass
    return 10.0


def outer_rings(geometry):
    t = geometry.get("type")
    if t == "Polygon":
        yield geometry["coordinates"][0]
    elif t == "MultiPolygon":
        for poly in geometry["coordinates"]:
            yield poly[0]


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    with open(sys.argv[1]) as f:
        doc = json.load(f)

    rings = []
    for feature in doc.get("features", []):
        props = feature.get("properties", {}) or {}
        if "building" not in props and "height" not in props:
            continue
        for ring in outer_rings(feature.get("geometry", {})):
            if len(ring) >= 4:
                rings.append((ring, parse_height(props)))
    if not rings:
        sys.exit("no building polygons found")

    lons = [p[0] for ring, _ in rings for p in ring]
    lats = [p[1] for ring, _ in rings for p in ring]
    lon0 = (min(lons) + max(lons)) / 2.0
    lat0 = (min(lats) + max(lats)) / 2.0
    kx = EARTH_RADIUS * math.cos(math.radians(lat0)) * math.pi / 180.0
    ky = EARTH_RADIUS * math.pi / 180.0

    def project(p):
        return [round((p[0] - lon0) * kx, 3), round((p[1] - lat0) * ky, 3)]

    features = []
    xs, ys = [], []
    for ring, h in rings:
        pts = [project(p) for p in ring]
        xs += [p[0] for p in pts]
        ys += [p[1] for p in pts]
        features.append(
            {
                "type": "Feature",
                "properties": {"kind": "building", "height_m": h},
                "geometry": {"type": "Polygon", "coordinates": [pts]},
            }
        )

    margin = 20.0
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    features.insert(
        0,
        {
            "type": "Feature",
            "properties": {"kind": "valid_region"},
            "geometry": {
                "type": "Polygon",
                "coordinates": [[[x0, y0], [x1, y0], [x1, y1], [x0, y1], [x0, y0]]],
            },
        },
    )

    out = {
        "type": "FeatureCollection",
        "area_km2": (x1 - x0) * (y1 - y0) / 1e6,
        "origin": "converted from %s (lon0=%.6f lat0=%.6f)" % (sys.argv[1], lon0, lat0),
        "features": features,
    }
    with open(sys.argv[2], "w") as f:
        json.dump(out, f)
        f.write("\n")
    print("wrote %s: %d buildings" % (sys.argv[2], len(features) - 1))


if __name__ == "__main__":
    main()
