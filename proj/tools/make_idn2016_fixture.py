#!/usr/bin/env python3
"""Generate fixtures/idn2016-synthetic.

A 5-sector economy with 20 household groups (10 income classes x urban/rural).
Group baseline incomes equal the published 2016 class incomes split into urban
and rural parts. Household income mixes are solved so that the closed-model
carbon-tax income decline reproduces the published per-class declines; the
emission intensities are then a single scalar multiple of a fixed shape.

Usage: make_idn2016_fixture.py <output_dir>
"""

import json
import sys
from pathlib import Path

import numpy as np

RATE = 30.0

SECTORS = ["AGR", "ENE", "MAN", "TRN", "SRV"]
OUTPUT = np.array([2.6e9, 2.4e9, 6.8e9, 2.2e9, 8.0e9])
COEFFS = np.array([
    [0.10, 0.01, 0.15, 0.01, 0.03],
    [0.04, 0.10, 0.12, 0.25, 0.03],
    [0.12, 0.08, 0.25, 0.15, 0.10],
    [0.04, 0.05, 0.06, 0.10, 0.06],
    [0.06, 0.08, 0.10, 0.12, 0.18],
])
EMISSION_SHAPE = np.array([0.30, 2.00, 0.50, 1.20, 0.10])

# Published class incomes and declines (million Rp).
Y1 = np.array([162856815, 260381265, 326679028, 390441241, 464644203,
               550599409, 661970128, 831187331, 1136537321, 2879595098], dtype=float)
DY = np.array([1639.65, 2592.88, 3239.68, 3857.56, 4583.77,
               5420.81, 6507.71, 8146.07, 11161.19, 27963.99])

# Published urban figures: class 1 and 5 incomes/declines, class 10 declines.
URBAN_Y1 = {1: 94750902.0, 5: 280984146.0}
URBAN_DY = {1: 954.23409, 5: 2767.98820, 10: 19144.85}
RURAL_DY = {10: 8819.13}

# Consumption propensity and basket by class (poorest to richest).
PROPENSITY = np.linspace(0.95, 0.60, 10)
BASKET_LOW = np.array([0.16, 0.05, 0.34, 0.07, 0.38])
BASKET_HIGH = np.array([0.07, 0.03, 0.30, 0.09, 0.51])


def urban_split():
    share10 = URBAN_DY[10] / (URBAN_DY[10] + RURAL_DY[10])
    share1 = URBAN_Y1[1] / Y1[0]
    share5 = URBAN_Y1[5] / Y1[4]
    shares = np.interp(np.arange(1, 11), [1, 5, 10], [share1, share5, share10])
    y_urban = np.round(shares * Y1)
    y_urban[0] = URBAN_Y1[1]
    y_urban[4] = URBAN_Y1[5]
    y_rural = Y1 - y_urban
    dy_urban = DY * y_urban / Y1
    dy_urban[0] = URBAN_DY[1]
    dy_urban[4] = URBAN_DY[5]
    dy_urban[9] = URBAN_DY[10]
    dy_rural = DY - dy_urban
    dy_rural[9] = RURAL_DY[10]
    return y_urban, y_rural, dy_urban, dy_rural


def main(out_dir: Path) -> None:
    n = len(SECTORS)
    Z = COEFFS * OUTPUT[None, :]
    f = OUTPUT - Z.sum(axis=1)
    va = OUTPUT - Z.sum(axis=0)
    assert (f > 0).all() and (va > 0).all()
    B = np.linalg.inv(np.eye(n) - COEFFS)

    y_urban, y_rural, dy_urban, dy_rural = urban_split()
    y0 = np.concatenate([y_urban, y_rural])
    target = np.concatenate([dy_urban, dy_rural])
    classes = np.concatenate([np.arange(1, 11), np.arange(1, 11)])

    t = (classes - 1) / 9.0
    basket = (1 - t)[:, None] * BASKET_LOW[None, :] + t[:, None] * BASKET_HIGH[None, :]
    H = (basket * (PROPENSITY[classes - 1] * y0)[:, None]).T
    C = H / y0[None, :]

    # Per-sector relative output declines: emission-driven part scaled by mu
    # plus the induced-consumption part fixed by the target declines.
    dv = RATE * EMISSION_SHAPE / 1e6
    dp = B.T @ dv
    sigma0 = (B @ (dp * f)) / OUTPUT
    sigma1 = (B @ (C @ target)) / OUTPUT

    base = va / va.sum()
    rho = target / y0
    rho_bar = target.sum() / y0.sum()
    mu = (rho_bar - base @ sigma1) / (base @ sigma0)
    sigma = mu * sigma0 + sigma1

    tilt = (sigma / (base @ sigma)) ** 4
    high = base * tilt
    high /= high.sum()
    low = base / tilt
    low /= low.sum()
    a, b = low @ sigma, high @ sigma
    theta = (rho - a) / (b - a)
    assert (theta >= 0).all() and (theta <= 1).all(), theta
    mix = (1 - theta)[:, None] * low[None, :] + theta[:, None] * high[None, :]
    W = mix * y0[:, None]
    assert (W.sum(axis=0) <= va).all(), (W.sum(axis=0), va)

    emissions = mu * EMISSION_SHAPE

    # Forward check with an independent closed-model solve.
    V = W / OUTPUT[None, :]
    K = np.linalg.inv(np.eye(20) - V @ B @ C)
    dv = RATE * emissions / 1e6
    df = -(B.T @ dv) * f
    got = -(K @ V @ B @ df)
    assert np.allclose(got, target, rtol=1e-9), np.max(np.abs(got / target - 1))

    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "sectors.csv", "w", newline="\n") as fh:
        fh.write("sector_id," + ",".join(SECTORS) + ",final_demand,value_added,total_output\n")
        for i, sid in enumerate(SECTORS):
            row = [f"{v:.6f}" for v in Z[i]] + [f"{f[i]:.6f}", f"{va[i]:.6f}", f"{OUTPUT[i]:.6f}"]
            fh.write(sid + "," + ",".join(row) + "\n")

    with open(out_dir / "households.csv", "w", newline="\n") as fh:
        fh.write("group_id,region,decile,kind," + ",".join(SECTORS) + ",total\n")
        for g in range(20):
            region = "urban" if g < 10 else "rural"
            gid = f"{region[0].upper()}{classes[g]:02d}"
            w = [f"{v:.6f}" for v in W[g]]
            fh.write(f"{gid},{region},{classes[g]},income," + ",".join(w) + f",{y0[g]:.6f}\n")
        for g in range(20):
            region = "urban" if g < 10 else "rural"
            gid = f"{region[0].upper()}{classes[g]:02d}"
            h = [f"{v:.6f}" for v in H[:, g]]
            fh.write(f"{gid},{region},{classes[g]},consumption," + ",".join(h) + f",{H[:, g].sum():.6f}\n")

    with open(out_dir / "emissions.csv", "w", newline="\n") as fh:
        fh.write("sector_id,kg_co2e_per_million_rp\n")
        for sid, e in zip(SECTORS, emissions):
            fh.write(f"{sid},{e:.12g}\n")

    scenario = {
        "label": "idn2016-rp30",
        "rate_rp_per_kg": RATE,
        "pass_through": 1.0,
        "emissions_file": "emissions.csv",
    }
    with open(out_dir / "scenario.json", "w", newline="\n") as fh:
        json.dump(scenario, fh, indent=2)
        fh.write("\n")

    print(f"mu={mu:.6g} theta=[{theta.min():.3f},{theta.max():.3f}] "
          f"income/va={W.sum(axis=0) / va}")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    main(Path(sys.argv[1]))
