#!/usr/bin/env python3
"""Generate the bundled specific-attenuation table (gamma_o / gamma_w vs height).

Reduced line-by-line gaseous absorption model in the style of ITU-R P.676:
a handful of the strongest O2 and H2O resonances covering 100-300 GHz plus the
dry continuum, evaluated on a US-standard-atmosphere height grid with an
exponentially decaying water-vapour profile (7.5 g/m^3 at the surface, 2 km
scale height).

Usage: gen_atmosphere.py [output_path]
"""

import math
import sys

# Oxygen lines: f0 [GHz], a1..a6 (P.676 table layout). The 50-70 GHz complex is
# collapsed into one effective line at 60 GHz; only its wing matters here.
O2_LINES = [
    (60.0, 5200.0, 0.0, 14.0, 0.0, 0.0, 0.0),
    (118.750334, 945.0, 0.000, 15.92, 0.0, -0.5439, 0.7358),
]

# Water-vapour lines: f0 [GHz], b1..b6. The 1780 GHz pseudo-line supplies the
# far-wing continuum that grows across the window.
H2O_LINES = [
    (22.235080, 0.1079, 2.144, 26.38, 0.76, 5.087, 1.00),
    (183.310087, 2.273, 0.668, 29.06, 0.77, 4.80, 0.85),
    (325.152888, 1.514, 1.541, 27.83, 0.744, 4.52, 0.74),
    (380.197353, 2.413, 1.052, 28.73, 0.713, 6.693, 0.97),
    (448.001085, 2.605, 1.405, 26.38, 0.724, 6.844, 0.50),
    (1780.0, 2230.0, 0.952, 25.6, 0.30, 2.0, 5.0),
]

FREQS_GHZ = [
    100.0, 110.0, 118.750334, 125.0, 130.0, 140.0, 150.0, 160.0, 164.0, 170.0,
    175.0, 178.0, 183.310087, 190.0, 200.0, 210.0, 220.0, 230.0, 240.0, 250.0,
    260.0, 270.0, 280.0, 290.0, 300.0,
]

HEIGHTS_KM = [
    0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0,
    9.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0, 25.0, 30.0, 40.0, 50.0, 70.0, 86.0,
]


def standard_atmosphere(h_km):
    """US standard temperature [K] and total pressure [hPa] at height h."""
    if h_km <= 11.0:
        t = 288.15 - 6.5 * h_km
        p = 1013.25 * (t / 288.15) ** 5.2561
    elif h_km <= 20.0:
        t = 216.65
        p = 226.32 * math.exp(-0.1577 * (h_km - 11.0))
    elif h_km <= 32.0:
        t = 216.65 + 1.0 * (h_km - 20.0)
        p = 54.75 * (216.65 / t) ** 34.163
    elif h_km <= 47.0:
        t = 228.65 + 2.8 * (h_km - 32.0)
        p = 8.68 * (228.65 / t) ** 12.2
    else:
        t = max(270.65 - 2.8 * max(h_km - 51.0, 0.0), 186.9)
        p = 1.109 * math.exp(-0.126 * (h_km - 47.0))
    return t, p


def water_vapour_pressure(h_km, t_k):
    rho = 7.5 * math.exp(-h_km / 2.0)  # g/m^3
    return rho * t_k / 216.7  # hPa


def line_shape(f, f0, df, delta):
    return (f / f0) * (
        (df - delta * (f0 - f)) / ((f0 - f) ** 2 + df**2)
        + (df - delta * (f0 + f)) / ((f0 + f) ** 2 + df**2)
    )


def gamma_oxygen(f_ghz, p_dry, e, theta):
    acc = 0.0
    for f0, a1, a2, a3, a4, a5, a6 in O2_LINES:
        s = a1 * 1e-7 * p_dry * theta**3 * math.exp(a2 * (1.0 - theta))
        df = a3 * 1e-4 * (p_dry * theta ** (0.8 - a4) + 1.1 * e * theta)
        df = math.sqrt(df * df + 2.25e-6)
        delta = (a5 + a6 * theta) * 1e-4 * (p_dry + e) * theta**0.8
        acc += s * max(line_shape(f_ghz, f0, df, delta), 0.0)
    # Dry-air continuum (Debye spectrum + pressure-induced nitrogen term).
    d = 5.6e-4 * (p_dry + e) * theta**0.8
    cont = f_ghz * p_dry * theta**2 * (
        6.14e-5 / (d * (1.0 + (f_ghz / d) ** 2))
        + 1.4e-12 * p_dry * theta**1.5 / (1.0 + 1.9e-5 * f_ghz**1.5)
    )
    return 0.1820 * f_ghz * (acc + cont)


def gamma_water(f_ghz, p_dry, e, theta):
    acc = 0.0
    for f0, b1, b2, b3, b4, b5, b6 in H2O_LINES:
        s = b1 * 1e-1 * e * theta**3.5 * math.exp(b2 * (1.0 - theta))
        df = b3 * 1e-4 * (p_dry * theta**b4 + b5 * e * theta**b6)
        acc += s * max(line_shape(f_ghz, f0, df, 0.0), 0.0)
    return 0.1820 * f_ghz * acc


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else "gamma_100_300.txt"
    with open(out_path, "w") as out:
        out.write("# Specific gaseous attenuation vs height, 100-300 GHz.\n")
        out.write("# Reduced line-by-line model (strongest O2/H2O resonances +\n")
        out.write("# dry continuum) on the US standard atmosphere; surface water\n")
        out.write("# vapour 7.5 g/m^3 with a 2 km scale height.\n")
        out.write("# Regenerate with tools/scripts/gen_atmosphere.py.\n")
        out.write("#\n# Block format:\n#   frequency_ghz <f>\n")
        out.write("#   height_m gamma_o_dB_per_km gamma_w_dB_per_km\n")
        for f in FREQS_GHZ:
            out.write("\nfrequency_ghz %.6f\n" % f)
            for h in HEIGHTS_KM:
                t, p_total = standard_atmosphere(h)
                e = min(water_vapour_pressure(h, t), 0.2 * p_total)
                p_dry = p_total - e
                theta = 300.0 / t
                go = gamma_oxygen(f, p_dry, e, theta)
                gw = gamma_water(f, p_dry, e, theta)
                out.write("%.0f %.6e %.6e\n" % (h * 1000.0, go, gw))
    print("wrote", out_path)


if __name__ == "__main__":
    main()
