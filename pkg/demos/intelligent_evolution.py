"""
Steering with a single phase flip
=================================

After k steps a phase flip on the first qubit, followed by k/2 more steps,
sends |00> to the singlet and |10> to minus the triplet partner.
"""

import numpy as np

from qzeno import core

k = 100
g = core.intelligent_evolution(k, core.auto_theta(k))
np.set_printoptions(precision=4, suppress=True)
print(g)

# columns are images of |00>, |10>, |01>
for name, ket, target in (("|00>", core.KET_00, core.PSI_MINUS), ("|10>", core.KET_10, core.PSI_PLUS)):
    out = g @ ket
    print(name, "overlap with target:", round(float(out @ target) / np.linalg.norm(out), 6))

# the singlet is untouched by identical rotations, so it never leaks
print(core.build_w(0.3) @ core.PSI_MINUS, core.PSI_MINUS)
