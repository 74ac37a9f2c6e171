"""
Sequential versus parallel repair
=================================

Seven erasures in the [27, 8] code with r=2, m=3.  Parallel repair fails
because some erased symbols have no erasure-free line.  Ordering the
repairs so that each can use symbols repaired before it recovers everything.
"""

import numpy as np

from elrc import CodeParams, encode, execute_plan, mask_word, parallel_repairable, parse_coord, plan_sequential
from elrc.formats import format_plan, format_word

p = CodeParams(2, 3)
erased = [parse_coord(p, tok) for tok in "020 120 010 110 021 121 011".split()]

check = parallel_repairable(p, erased)
print("parallel repairable:", check.repairable)
for a, axis in check.witness.items():
    print("  ", a, "->", "blocked" if axis is None else f"axis {axis}")

###############################################################################
# The greedy planner finds an order.

plan = plan_sequential(p, erased)
print(format_plan(p, plan))

###############################################################################
# Run it on a masked codeword.

rng = np.random.default_rng(0)
x = encode(p, rng.integers(0, 2, p.k))
masked = mask_word(p, x, erased)
print("masked:  ", format_word(masked))
repaired = execute_plan(p, masked, erased, plan)
print("repaired:", format_word(repaired))
assert np.array_equal(repaired, x)
