"""
Fermat curves and their closed formula
======================================

For plane curves the ML degree has a closed form depending on d mod 6.  Here
we compare it with the partition computation, and split it into the generic
d^2 - 3d part and the points on the coordinate lines and x0 + x1 + x2 = 0.
"""

from fermat_mld import EngineConfig, mldeg
from fermat_mld.mldeg import boundary_count_plane, closed_form_plane_curve

cfg = EngineConfig()

print(f"{'d':>3} {'d mod 6':>8} {'boundary':>9} {'closed':>7} {'computed':>9}")
for d in range(2, 9):
    computed = mldeg(2, d, cfg, "partitioning-diff").value
    print(f"{d:>3} {d % 6:>8} {boundary_count_plane(d):>9} "
          f"{closed_form_plane_curve(d):>7} {computed:>9}")

# The closed value is d^2 - 3d plus the boundary count.
for d in range(2, 14):
    assert d * d - 3 * d + boundary_count_plane(d) == closed_form_plane_curve(d)
