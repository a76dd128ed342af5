"""Fixed-step propagators with a compiled core and a numpy fallback.

Importing this package selects the compiled extension when it is
available and the environment variable RAMANPHOTON_DISABLE_COMPILED is
unset; otherwise the pure numpy implementation is used.  ``COMPILED``
records which one is active.
"""

import os

if os.environ.get("RAMANPHOTON_DISABLE_COMPILED"):
    from ._fallback import rk4_laser_n0, rk4_photon
    COMPILED = False
else:
    try:
        from ._core import rk4_laser_n0, rk4_photon
        COMPILED = True
    except ImportError:
        from ._fallback import rk4_laser_n0, rk4_photon
        COMPILED = False

__all__ = ["COMPILED", "rk4_laser_n0", "rk4_photon"]
