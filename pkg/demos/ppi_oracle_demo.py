"""Halmos-Wallen split of a random exact power partial isometry, verified
against the independent brute-force chain oracle.

The engine computes the fourfold {u, s, b, t} basis through projection-
lattice infima; the oracle instead extracts truncated-shift chains by
exact kernel bookkeeping.  In finite dimension the two must agree.
"""

import numpy as np

from stardecomp import brute_hw_classify, halmos_wallen
from stardecomp.fixtures import random_ppi

rng = np.random.default_rng(2024)
x = random_ppi(6, rng, unitary_rank=2)
print("random 6x6 rational PPI (unitary rank 2), entry sample:")
print(" ", [str(v) for v in x.mat[0][:3]], "...")

report = halmos_wallen(x)
print("\nengine blocks:")
for label, p in report.basis.members:
    print(f"  {label}: rank {p.rank}  ({report.block_classes[label]})")
print(f"  worst residual: {report.max_residual():.1e}  (exact: must be 0)")

chains = brute_hw_classify(x)
print("\noracle:", chains)
agree = (report.basis["u"].rank == chains.u_rank
         and report.basis["t"].rank == chains.t_rank)
print("engine and oracle agree:", agree)
