"""Homogeneous local representations: conjugate to the normal form and
read off the invariant line, then sweep the rho3 family over a small grid."""

from sbrep import burnside_verdict, homog_rho, invariant_line_witness, normalize_homog
from sbrep.sweep import SweepConfig, run_sweep

rep = homog_rho("rho1", {"a": 3, "c": 2, "t": -1}, 4)
norm = normalize_homog(rep)
print("rho1 sigma_1 after conjugation:")
for row in norm.images[next(iter(norm.images))].rows:
    print("   ", [str(x) for x in row])
print("fixed line:", [str(x) for x in invariant_line_witness(norm)])

rep = homog_rho("rho3", {"b": 2, "c": "1/2", "x": 0, "y": 2}, 3)
print("rho3 on the boundary bc = 1, x + y/b = 1:", burnside_verdict(rep).status)

report = run_sweep(SweepConfig("local_rho3", grid={"b": [1, 2], "c": [1, "1/2"],
                                                   "x": [0, 1], "y": [1, 2]},
                               strand_counts=(3,)))
print("sweep summary:", report.summary())
