"""
Four ways to the same number
============================

Random data works with the full system in n+1 variables.  The partition
strategies only ever see a handful of variables, which is why they scale to
much larger n.  All four should agree.
"""

import time

from fermat_mld import EngineConfig, mldeg
from fermat_mld.mldeg import clear_memo

cfg = EngineConfig(seed=7)
strategies = ["random", "random-diff", "partitioning", "partitioning-diff"]

for n, d in [(2, 4), (3, 3), (4, 3), (3, 4)]:
    row = []
    for s in strategies:
        clear_memo()
        t0 = time.perf_counter()
        value = mldeg(n, d, cfg, s).value
        row.append(f"{s}={value} ({time.perf_counter() - t0:.2f}s)")
    print(f"n={n} d={d}: " + "  ".join(row))

# Partitions keep going where random data gets slow.
clear_memo()
t0 = time.perf_counter()
print("n=9 d=3:", mldeg(9, 3, cfg, "partitioning-diff").value,
      f"({time.perf_counter() - t0:.2f}s)")
