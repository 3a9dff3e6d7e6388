# %% [markdown]
# # Dekking curves and their scaling factor
#
# D_{p,q,k}(N) sums zeta_p^{t_p(i)} zeta_q^{k i}.  With Q = p**totient(q) and
# r = D(Q) the curve satisfies D(Q n) = r D(n).

# %%
import time

from tmcurves import DekkingCurve, dekking_point, dekking_point_fast, scaling_info

for D in [DekkingCurve(2, 3, 1), DekkingCurve(3, 2, 1), DekkingCurve(2, 5, 1),
          DekkingCurve(2, 7, 2), DekkingCurve(2, 15, 1)]:
    info = scaling_info(D)
    print(f"{D}: Q={info.Q:<4} r={info.r!r:<28} |r| in [{float(info.modulus.lower):.6f}, "
          f"{float(info.modulus.upper):.6f}] regular={info.regular}")

# %% [markdown]
# The fast evaluator splits N in base Q, so huge indices are cheap.

# %%
D = DekkingCurve(2, 3, 1)
t = time.perf_counter()
print("D(4**40) =", dekking_point_fast(D, 4 ** 40), f"({time.perf_counter() - t:.4f}s)")
print("fast == scan at N=123457:", dekking_point_fast(D, 123457) == dekking_point(D, 123457))
