"""Generate the bundled synthetic climate fixtures.

The repository cannot ship the real CO2 and temperature records, so it
carries small surrogate series that follow the same file layouts, units,
seasonal structure, and long-term trends: a quadratically rising CO2
curve with a few sentinel-marked gaps, and two warming temperature
series (a smooth global mean and a noisier single station). Everything
is seeded, so rerunning this script reproduces the files byte for byte.

Run from the repository root:

    python3 scripts/make_climate_fixtures.py
"""

import json
import os

import numpy as np

SEED = 20240811
FIRST_YEAR = 1960
LAST_YEAR = 2023
OUT_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "src", "rbon", "data", "climate",
)

# (year, month) slots written as the -99.99 sentinel in the CO2 file.
CO2_GAPS = {(1964, 2), (1964, 3), (1964, 4), (1975, 6)}


def co2_value(year, month, rng):
    elapsed = year - FIRST_YEAR + (month - 0.5) / 12.0
    trend = 316.0 + 0.80 * elapsed + 0.0125 * elapsed**2
    phase = 2.0 * np.pi * (month - 5.0) / 12.0
    seasonal = 2.8 * np.cos(phase) + 0.7 * np.cos(2.0 * phase + 0.4)
    return trend + seasonal + rng.normal(0.0, 0.25)


def temperature_value(year, month, base, trend_per_year, amplitude, noise, rng):
    elapsed = year - FIRST_YEAR + (month - 0.5) / 12.0
    seasonal = -amplitude * np.cos(2.0 * np.pi * (month - 1.0) / 12.0)
    return base + trend_per_year * elapsed + seasonal + rng.normal(0.0, noise)


def write_co2(path, rng):
    lines = [
        '" Synthetic surrogate of a monthly in-situ CO2 record (ppm)."',
        '" Generated by scripts/make_climate_fixtures.py; not real observations."',
        '" Layout mirrors the public station files: quoted comments, then Yr,Mn,Date,CO2,Sdev."',
        "Yr,Mn,Date,CO2,Sdev",
    ]
    for year in range(FIRST_YEAR, LAST_YEAR + 1):
        for month in range(1, 13):
            date = year + (month - 0.5) / 12.0
            sdev = rng.uniform(0.1, 0.4)
            if (year, month) in CO2_GAPS:
                value = "-99.99"
            else:
                value = f"{co2_value(year, month, rng):.2f}"
            lines.append(f"{year},{month},{date:.2f},{value},{sdev:.2f}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def write_temperature(path, rng, label, base, trend_per_year, amplitude, noise):
    lines = [
        f"# Synthetic surrogate of a {label} (degrees C).",
        "# Generated by scripts/make_climate_fixtures.py; not real observations.",
        "year,month,value",
    ]
    for year in range(FIRST_YEAR, LAST_YEAR + 1):
        for month in range(1, 13):
            value = temperature_value(
                year, month, base, trend_per_year, amplitude, noise, rng
            )
            lines.append(f"{year},{month},{value:.2f}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    rng = np.random.default_rng(SEED)
    write_co2(os.path.join(OUT_DIR, "co2_monthly.csv"), rng)
    write_temperature(
        os.path.join(OUT_DIR, "temp_global_monthly.csv"),
        rng,
        label="global monthly mean temperature series",
        base=14.0,
        trend_per_year=0.016,
        amplitude=2.1,
        noise=0.08,
    )
    write_temperature(
        os.path.join(OUT_DIR, "temp_local_monthly.csv"),
        rng,
        label="single-station monthly mean temperature series",
        base=21.0,
        trend_per_year=0.020,
        amplitude=4.5,
        noise=0.45,
    )
    manifest = {
        "surrogate": True,
        "generator": "scripts/make_climate_fixtures.py",
        "seed": SEED,
        "years": [FIRST_YEAR, LAST_YEAR],
        "files": {
            "co2_monthly.csv": "monthly CO2 (ppm), rising trend + seasonal cycle, "
                               "-99.99 marks missing months",
            "temp_global_monthly.csv": "smooth global-style monthly temperature (C)",
            "temp_local_monthly.csv": "noisier station-style monthly temperature (C)",
        },
        "note": "Synthetic stand-ins shaped like the public CO2/temperature records "
                "so the forecasting pipeline runs end to end without redistributing "
                "third-party data.",
    }
    with open(os.path.join(OUT_DIR, "MANIFEST.json"), "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    print(f"wrote fixtures to {OUT_DIR}")


if __name__ == "__main__":
    main()
