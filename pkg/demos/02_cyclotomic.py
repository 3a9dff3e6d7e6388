# %% [markdown]
# # Exact cyclotomic arithmetic
#
# Curve points live in Q(zeta_m).  Equality is exact, and floats only appear
# when embedding into the plane with a certified error.

# %%
from fractions import Fraction

from tmcurves.cyclotomic import CycNumber, certified_sign, embed, root

w = root(3)
print("(1 - w)(1 - w^2) =", (1 - w) * (1 - w ** 2))
print("1/(1 - w)        =", (1 - w).inv())
print("zeta_12^6 == -1  :", root(12, 6) == -1)

# %%
sqrt3 = root(12) + root(12, 11)
print("sqrt(3)^2 =", sqrt3 * sqrt3)
z, mod = embed(sqrt3, Fraction(1, 10**15))
print("sqrt(3) ~", z.real, "with |.| in", (float(mod.lower), float(mod.upper)))
print("sign(sqrt3 - 1.732) =", certified_sign(sqrt3 - Fraction(1732, 1000)))
