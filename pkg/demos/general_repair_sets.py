"""
Repair sets beyond lines
========================

A repair set is any set of at most r symbols whose XOR equals the target on
every codeword.  The oracle searches those with linear algebra on H; a brute
force pass over the whole dual code confirms its answers.
"""

from elrc import CodeParams, all_coords, repair_sets
from elrc.analysis import brute_force_repair_set, general_repair_set_oracle, is_repair_set

p = CodeParams(2, 2)
target = (0, 0)
live = [a for a in all_coords(p) if a != target]
print("all live:", general_repair_set_oracle(p, target, live))

###############################################################################
# Kill both lines through the target and no set of size <= r remains.

dead = {(0, 1), (1, 0), (2, 0), (0, 2)}
live = [a for a in live if a not in dead]
print("lines dead:", general_repair_set_oracle(p, target, live), brute_force_repair_set(p, target, live))

###############################################################################
# Every line minus its point passes the same test.

print(all(is_repair_set(p, a, s) for a in all_coords(p) for s in repair_sets(p, a)))
