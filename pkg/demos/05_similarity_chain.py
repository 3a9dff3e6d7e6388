# %% [markdown]
# # From a Thue-Morse turtle curve to a Dekking curve
#
# Three similarity steps take a t_2 curve to a regular D_{2,q,k1}.  Every
# witness is checked exactly for n <= depth.

# %%
from tmcurves import DekkingCurve, RootOfUnity as U, thue_morse_curve
from tmcurves.similarity import HypothesisError, certify_main_result, check_witness, dekking_reduce

curves = {
    "Ma-Holdener": [(1, U(1, 0)), (0, U(6, 1))],
    "Zantema": [(1, U(3, 1)), (1, U(2, 1))],
    "pentagon-turn": [(1, U(5, 2)), (0, U(5, 1))],
    "straight line": [(1, U(6, 1)), (1, U(6, 5))],
}
for name, images in curves.items():
    T = thue_morse_curve(2, images, name)
    try:
        cert = certify_main_result(T, n_max=1000)
    except HypothesisError as exc:
        print(f"{name}: rejected [{exc.reason}] {exc}")
        continue
    w = cert.composite
    print(f"{name}: {T} ~ {cert.target} via ({w.c!r}) * T({w.k1}n) = R({w.k2}n); "
          f"verified={cert.verified} koch={cert.koch}")

# %% [markdown]
# The reduction step on its own: D_{2,10,7} is similar to D_{2,5,3}.

# %%
red = dekking_reduce(DekkingCurve(2, 10, 7), target_k1=3)
print(red.target, "d =", red.d, "witness passes:", check_witness(red.witness, 1000).passed)
