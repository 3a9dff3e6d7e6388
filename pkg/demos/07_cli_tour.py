# %% [markdown]
# # The command line
#
# Same operations through `tmcurves`; exit code 0 means every check passed,
# 1 a counterexample, 2 invalid input.

# %%
import tempfile
from pathlib import Path

from tmcurves.cli import main

main(["seq", "--tm", "2", "--len", "28"])
main(["seq", "--dekking", "3", "2", "--len", "12", "--format", "json"])
print("exit", main(["verify", "--tau0", "1@1", "--tau1", "0@1/6", "--depth", "500"]))
print("exit", main(["converge", "--dekking", "2", "3", "1", "--n", "5", "--against-koch"]))

# %%
out = Path(tempfile.mkdtemp()) / "koch.svg"
main(["render", "--dekking", "2", "3", "1", "--steps", "1024", "--out", str(out)])
print("wrote", out, out.stat().st_size, "bytes")
print("exit", main(["verify", "--tau0", "1@1/6", "--tau1", "1@-1/6"]))
