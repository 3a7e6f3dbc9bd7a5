"""Kernel backend selection.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python twin takes over.  Set ``TORICSTAB_PURE=1`` to force the pure
backend (useful for benchmarking and differential testing).  Both produce
identical exact integer results.
"""

import os

if os.environ.get("TORICSTAB_PURE") == "1":
    from . import _pure as _impl
else:
    try:
        from . import _ext as _impl
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND
simple_pl_values = _impl.simple_pl_values
lattice_weighted_sum = _impl.lattice_weighted_sum


def available_backends():
    """Importable kernel modules keyed by name, for benchmarks and tests."""
    from . import _pure

    found = {"pure": _pure}
    try:
        from . import _ext

        found["compiled"] = _ext
    except ImportError:
        pass
    return found
