# %% [markdown]
# # Turtle curves
#
# An instruction (z, u) moves by z and then turns by u.  The Ma-Holdener
# curve moves one unit on 0 and turns by pi/3 on 1.

# %%
import numpy as np

from tmcurves import RootOfUnity, polyline, thue_morse_curve
from tmcurves.turtle import alpha_word, p_word

mh = thue_morse_curve(2, [(1, RootOfUnity(1, 0)), (0, RootOfUnity(6, 1))], "Ma-Holdener")
print("first points:", mh.points(8))
print("heading after 01:", alpha_word(mh.interp, [0, 1]))
print("P(01), P(10):", p_word(mh.interp, [0, 1]), p_word(mh.interp, [1, 0]))

# %%
seg = polyline(mh, 4096)
v = seg.vertices
print(f"{len(seg)} segments, bounding box {v.real.min():.2f}..{v.real.max():.2f} x "
      f"{v.imag.min():.2f}..{v.imag.max():.2f}, error budget {seg.error_budget}")
print("zero-length segments kept:", int(np.count_nonzero(seg.starts == seg.ends)))
