"""Kernel selection: compiled extension when available, pure Python otherwise.

The hot inner loops of the library (truncated series arithmetic, differential
operator evolution, lattice enumeration) live behind this facade.  At import
time the Cython build is preferred; set MIPOLY_PURE=1 to force the fallback.
Both implementations are exact and produce bit-identical results.

Lattice enumeration and batch evaluation route per call: the compiled machine
integer path is used only when precomputed magnitude bounds prove that no
intermediate can overflow 64 bits, so exactness never depends on input size.
"""

import importlib
import os

from . import _pure

_speed = None
if not os.environ.get("MIPOLY_PURE"):
    try:
        _speed = importlib.import_module(__name__ + "._speed")
    except ImportError:
        _speed = None

_impl = _speed if _speed is not None else _pure

INT64_CAP = 2**62


def backend_name():
    return "compiled" if _impl is not _pure else "pure"


def implementations():
    """(name, module) pairs of every available implementation, for benchmarks."""
    out = [("pure", _pure)]
    if _speed is not None:
        out.append(("compiled", _speed))
    return out


# series / operator kernels: plain delegation --------------------------------

ser_normalize = _impl.ser_normalize
ser_mul = _impl.ser_mul
ser_inv = _impl.ser_inv
ser_binom = _impl.ser_binom
ser_coeff_conv = _impl.ser_coeff_conv
op_term_images = _impl.op_term_images


# enumeration kernels: guarded routing ----------------------------------------


def _enum_fits64(rows, rhs, lows, highs):
    for row, r in zip(rows, rhs):
        bound = abs(r)
        for a, lo, hi in zip(row, lows, highs):
            bound += abs(a) * max(abs(lo), abs(hi))
        if bound >= INT64_CAP:
            return False
    return all(abs(v) < INT64_CAP for v in list(lows) + list(highs))


def enum_box_points(rows, rhs, lows, highs):
    if _impl is not _pure and _enum_fits64(rows, rhs, lows, highs):
        return _impl.enum_box_points(rows, rhs, lows, highs)
    return _pure.enum_box_points(rows, rhs, lows, highs)


def _eval_fits64(coeffs, exps, lows, highs):
    big = max((max(abs(lo), abs(hi)) for lo, hi in zip(lows, highs)), default=0)
    bound = 0
    for c, e in zip(coeffs, exps):
        bound += abs(c) * big ** sum(e)
        if bound >= INT64_CAP:
            return False
    return True


def eval_poly_points(coeffs, exps, points, lows=None, highs=None):
    if (
        _impl is not _pure
        and lows is not None
        and highs is not None
        and _eval_fits64(coeffs, exps, lows, highs)
    ):
        return _impl.eval_poly_points(coeffs, exps, points)
    return _pure.eval_poly_points(coeffs, exps, points)
