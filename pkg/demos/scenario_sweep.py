"""
Scenarios and sweeps from Python
================================

Everything the command line does is available as functions. This loads the
bundled reference scenario, evaluates it, then sweeps the photon number and
the detection efficiency.
"""

from interferotherm import scenario as sc

scen = sc.load("paper")
rows, failed = sc.evaluate(scen)
row = rows[0]
print(f"model {row['model']}, closed-form dT {row['delta_T_paper_K']:.4g} K, "
      f"claimed {row['claimed_delta_T_K']:.0e} K -> {row['claim_flag']}")

rows, _ = sc.sweep(scen, "N", sc.parse_grid("log:1e8:1e10:3"))
for r in rows:
    print(f"N = {r['photon_number']:.0e}: omega_p' = {r['omega_p_eff_rad_s']:.4e}, dT = {r['delta_T_paper_K']:.4e} K")

rows, _ = sc.sweep(scen, "eta", sc.parse_grid("1,0.5,0.25"))
for r in rows:
    print(f"eta = {r['eta_detect']}: dT = {r['delta_T_paper_K']:.4e} K ({r['formula']})")

# the same table as CSV, byte for byte what `interferotherm sweep` writes
print(sc.to_csv(rows).splitlines()[0][:80], "...")
