"""
Building the code
=================

The code lives on the cube Z_{r+1}^m.  Information bits fill the corner
Z_r^m and every other position is a parity bit.
"""


from elrc import CodeParams, all_coords, build_parity_check, encode, format_coord, l_set, t_set

p = CodeParams(r=2, m=2)
print(f"n={p.n} k={p.k} t={p.t}")

###############################################################################
# Each parity coordinate checks the information coordinates that agree with
# it wherever its digit is below r.

for a in all_coords(p):
    if p.r in a:
        members = " ".join(format_coord(p, b) for b in l_set(p, a))
        print(f"{format_coord(p, a)}: T={sorted(t_set(p, a))}  L={members}")

###############################################################################
# Those sets give the rows of the parity-check matrix.

h = build_parity_check(p)
print(h.rows)

###############################################################################
# Encoding one information bit lights up a 2x2 subcube.  Laid out on the
# 3x3 grid, every row and every column has even parity.

x = encode(p, [1, 0, 0, 0])
grid = x.reshape(p.shape)
print(grid)
assert not (grid.sum(axis=0) % 2).any() and not (grid.sum(axis=1) % 2).any()
assert not h.syndrome(x).any()
