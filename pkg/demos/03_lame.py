"""
The Lamé operator
=================

Hyperelliptic curves of -d^2 + g(g+1) P from the product of eigenfunctions.
Run with ``python3 demos/03_lame.py``.
"""

# %%
from halphen import lame as lc
from halphen import verify as vf
from halphen.poly import SparsePoly

for g in range(1, 5):
    print(f"g = {g}  w^2 =", lc.lame_curve(g).format())

# %%
# With A_g = 1 the curve is not monic; the rescaling lambda = 1/lc(A_0)
# fixes that.
for g in range(1, 5):
    raw = lc.lame_data(g, normalized=False)
    print(f"g = {g}  raw leading coefficient {raw.curve_rhs.leading_coefficient('z').format()}"
          f"  lambda = {lc.lame_data(g).scale}")

# %%
# The square expression Q_x^2/4 - Q Q_xx/2 + (u - z) Q^2 is x-constant but
# equals the negative of the curve.
print(vf.verify_lame(3).to_table())

# %%
# Setting g2 = 0 at g = 1 gives (4z^3 + g3)/4, the Halphen g = 1 curve.
print(lc.lame_curve(1).substitute("g2", 0).format(), "  vs  z^3 + g3/4")
print(SparsePoly.var("z") ** 3 + SparsePoly.var("g3") / 4 == lc.lame_curve(1).substitute("g2", 0))
