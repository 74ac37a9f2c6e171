"""
How many erasures can be repaired?
==================================

Check every erasure pattern up to 2^m - 1 symbols, look at what goes wrong
one step further, and reproduce the comparison tables.
"""

from elrc import CodeParams, parallel_tolerance, plan_sequential, verify_elrc
from elrc.analysis import format_table1, format_table2, min_distance_bruteforce, table1, table2

p = CodeParams(2, 2)
print(verify_elrc(p, p.t).to_text())

###############################################################################
# At 2^m erasures the only failures are subcubes, which are supports of
# minimum-weight codewords: no decoder could tell the two codewords apart.

report = verify_elrc(p, p.t + 1)
print(report.to_text())
print("minimum distance:", min_distance_bruteforce(p))
print(plan_sequential(p, report.failures[0]))

###############################################################################
# Parallel repair tops out at m.

for m in (2, 3):
    print(m, parallel_tolerance(CodeParams(2, m)))

###############################################################################
# Sampling covers larger cubes.

print(verify_elrc(CodeParams(2, 4), 15, "random", samples=2000, seed=1).to_text())

print(format_table1(table1()))
print(format_table2(table2(ms=(2, 3), certify=True)))
