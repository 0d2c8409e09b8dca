"""The numpy fallback must reproduce the numba kernels exactly."""

import json
import os
import subprocess
import sys

SNIPPET = r"""
import json
import numpy as np
from cpext import backend_name
from cpext.catalog import get_group
from cpext.cohomology import multiplier_invariants
from cpext.exterior import exterior_groups
from cpext.kernels import howell_reduce
rng = np.random.default_rng(0)
rows = []
for m in (4, 6, 12):
    A = rng.integers(0, m, (7, 5))
    R, piv = howell_reduce(A, m)
    rows.append([np.asarray(R).tolist(), np.asarray(piv).tolist()])
out = {
    "backend": backend_name(),
    "howell": rows,
    "phi16": multiplier_invariants(get_group("Phi16")).as_dict(),
    "wedge_D4": exterior_groups(get_group("D4"), "wedge").order,
}
print(json.dumps(out))
"""


def _run(backend):
    env = dict(os.environ, CPEXT_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", SNIPPET], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def test_numpy_backend_matches_numba():
    a, b = _run("numba"), _run("numpy")
    assert a["backend"] == "numba" and b["backend"] == "numpy"
    for key in ("howell", "phi16", "wedge_D4"):
        assert a[key] == b[key]
    assert b["phi16"]["B0"] == [2]
