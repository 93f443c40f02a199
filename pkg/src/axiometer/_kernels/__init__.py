"""Backend selection for the subset-lattice sweeps.

The compiled Cython kernels are used when available; otherwise the numpy
implementation takes over with identical semantics.  Set ``AXIOMETER_PURE=1``
to force the fallback (useful for benchmarking and debugging).
"""

import os

from . import lattice_np

if os.environ.get("AXIOMETER_PURE"):
    impl = lattice_np
else:
    try:
        from . import _lattice_cy as impl  # type: ignore[no-redef]
    except ImportError:
        impl = lattice_np

BACKEND = impl.NAME

zeta_superset_ = impl.zeta_superset_
moebius_superset_ = impl.moebius_superset_
zeta_subset_ = impl.zeta_subset_
moebius_subset_ = impl.moebius_subset_


def available_backends():
    """Return the importable kernel modules, compiled one first if built."""
    mods = []
    try:
        from . import _lattice_cy

        mods.append(_lattice_cy)
    except ImportError:
        pass
    mods.append(lattice_np)
    return mods
