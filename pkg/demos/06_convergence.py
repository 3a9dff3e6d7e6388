# %% [markdown]
# # Hausdorff convergence to the Koch curve
#
# S_n = r**-n times the first Q**n steps.  Consecutive S_n differ by at most
# Q |r|**-n, and for D_{2,3,1} every S_n is the classical Koch polyline.

# %%
from tmcurves import DekkingCurve, RootOfUnity as U, thue_morse_curve
from tmcurves.hausdorff import convergence_report, shared_limit_report
from tmcurves.similarity import certify_main_result

print(" n   d(S_n,S_n+1)   bound      d(S_n,Koch)")
for row in convergence_report(DekkingCurve(2, 3, 1), 6, 1e-3, against_koch=True):
    print(f"{row.n:2d}   {row.step_distance.value:.6f}     {row.bound:.6f}   "
          f"{row.koch_distance.value:.2e} (+-{row.koch_distance.error:.1e})")

# %% [markdown]
# Ma-Holdener prefixes, rescaled by the certified similarity, close in on the
# same Koch curve.

# %%
mh = thue_morse_curve(2, [(1, U(1, 0)), (0, U(6, 1))])
for row in shared_limit_report(certify_main_result(mh), range(2, 7)):
    print(f"n={row.n}  {row.steps:6d} steps  d_H to Koch = {row.to_koch.value:.5f}")
