"""Grid-evaluation kernels for the response channels.

Two interchangeable implementations of ``channel_arrays`` exist: a Cython
extension (built at install time when a compiler is available) and a numpy
reference.  The compiled one is preferred at import; set
``OMROUTER_KERNEL=reference`` or ``=compiled`` to force a backend, the
latter raising if the extension is missing.  ``BACKEND`` records the choice.
"""

import os

from . import reference

_choice = os.environ.get("OMROUTER_KERNEL", "").strip().lower()

if _choice == "reference":
    _impl = reference
elif _choice == "compiled":
    from . import _fast as _impl
elif _choice:
    raise ImportError(f"OMROUTER_KERNEL must be 'reference' or 'compiled', got {_choice!r}")
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = reference

BACKEND = "reference" if _impl is reference else "compiled"
channel_arrays = _impl.channel_arrays
thermal_weight = reference.thermal_weight

__all__ = ["BACKEND", "channel_arrays", "thermal_weight", "reference"]
