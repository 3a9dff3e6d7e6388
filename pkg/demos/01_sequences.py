# %% [markdown]
# # Thue-Morse and Dekking sequences
#
# t_p(n) is the base-p digit sum of n reduced mod p. It is also the fixed
# point of the morphism a -> a, a+1, ..., a+p-1.  Both routes are available.

# %%
from tmcurves.words import (
    SequenceSpec, decode_pair, fixed_point_prefix, lambda_morphism, thue_morse_morphism, tm_symbol,
)

for p in (2, 3, 4, 5):
    print(f"t_{p}:", "".join(map(str, SequenceSpec.thue_morse(p).prefix(27))))

# %%
phi = thue_morse_morphism(3)
print("phi(0), phi(1), phi(2) =", [phi.image(a).tolist() for a in range(3)])
print("fixed point agrees with digit sums:",
      fixed_point_prefix(phi, 0, 5000).tolist() == [tm_symbol(3, n) for n in range(5000)])

# %% [markdown]
# Dekking sequences pair t_p(n) with n mod q.  When gcd(p, q) = 1 they are
# the fixed point of a Q-uniform morphism, Q = p**totient(q).

# %%
lam = lambda_morphism(2, 3)
print("lambda arity:", lam.arity)
z = fixed_point_prefix(lam, 0, 12)
print("z_{2,3}:", [decode_pair(s, 3) for s in z])
