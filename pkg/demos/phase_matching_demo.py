"""Phase-matching walkthrough for the 405 nm pumped BBO crystal.

Plots the refractive indices, then the collinear degenerate phase mismatch
as a function of the pump-to-axis angle for both down-conversion processes,
marking where each curve crosses zero.

Run from the repository root:  python3 demos/phase_matching_demo.py
Outputs land in demos/output/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spdcsim import (
    collinear_mismatch,
    find_collinear_angle,
    n_extraordinary_principal,
    n_ordinary,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# --- indices across the transparency window -------------------------------
wavelengths = np.linspace(0.25e-6, 1.0e-6, 400)
n_o = [n_ordinary(w) for w in wavelengths]
n_e = [n_extraordinary_principal(w) for w in wavelengths]

fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(wavelengths * 1e9, n_o, label="ordinary")
ax.plot(wavelengths * 1e9, n_e, label="extraordinary (principal)")
for w in (405e-9, 810e-9):
    ax.axvline(w * 1e9, color="gray", ls=":", lw=0.8)
ax.set_xlabel("wavelength (nm)")
ax.set_ylabel("refractive index")
ax.set_title("BBO indices; dotted lines mark pump and degenerate pair")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "bbo_indices.png", dpi=150)

# --- collinear mismatch vs pump angle --------------------------------------
angles = np.deg2rad(np.linspace(20.0, 60.0, 600))
fig, ax = plt.subplots(figsize=(6, 4))
for process in ("type1", "type2"):
    dk = np.array([collinear_mismatch(a, 405e-9, process) for a in angles])
    ax.plot(np.rad2deg(angles), dk / 1e6, label=process)
    alpha = find_collinear_angle(405e-9, process)
    ax.axvline(np.rad2deg(alpha), ls="--", lw=0.8)
    print(f"{process}: collinear angle = {np.rad2deg(alpha):.4f} deg, "
          f"residual = {collinear_mismatch(alpha, 405e-9, process):.2e} rad/m")
ax.axhline(0.0, color="k", lw=0.6)
ax.set_xlabel("pump-to-axis angle (deg)")
ax.set_ylabel("collinear mismatch (rad/um)")
ax.set_title("Degenerate collinear phase mismatch at 405 nm")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "collinear_mismatch.png", dpi=150)
print(f"wrote {OUT / 'bbo_indices.png'} and {OUT / 'collinear_mismatch.png'}")
