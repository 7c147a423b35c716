"""Import-time selection between the compiled kernels and the Python fallback.

Set ``FOLDWIDTH_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("FOLDWIDTH_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ckernels import face_orbits, min_rooted_code, strand_orbits

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import face_orbits, min_rooted_code, strand_orbits

__all__ = ["BACKEND", "face_orbits", "min_rooted_code", "strand_orbits"]
