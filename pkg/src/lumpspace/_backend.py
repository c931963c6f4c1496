"""Backend selection for the numeric kernels.

``LUMPSPACE_NUMBA=0`` forces the pure-numpy path even when numba is
importable. ``LUMPSPACE_THREADS`` caps the numba thread pool.
"""
import os

# The TBB layer shipped with some numba wheels is too old and warns on first
# parallel compile; the workqueue layer is always available.
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

_FLAG = os.environ.get("LUMPSPACE_NUMBA", "1").strip().lower()
_WANT_NUMBA = _FLAG not in ("0", "false", "no", "off")

try:
    if not _WANT_NUMBA:
        raise ImportError("numba disabled by LUMPSPACE_NUMBA")
    import numba
    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False


def _apply_thread_cap():
    cap = os.environ.get("LUMPSPACE_THREADS")
    if not (HAS_NUMBA and cap):
        return
    try:
        n = int(cap)
    except ValueError:
        return
    n = max(1, min(n, numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)


_apply_thread_cap()


def backend_name():
    return "numba" if HAS_NUMBA else "numpy"
