"""Selection of the pivot kernel backend.

``compiled`` pairs the Cython kernel with ``gmpy2.mpq`` scalars; ``python``
pairs the pure-Python kernel with ``fractions.Fraction``. The default is the
compiled backend when both the extension and gmpy2 import; set
``MNEP_KERNEL=python`` to force the fallback.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

try:
    import gmpy2
except ImportError:
    gmpy2 = None


@dataclass(frozen=True)
class Backend:
    name: str
    pivot: Callable[[list, int, int], None]
    min_ratio_rows: Callable[[list, int, Any], list]
    scalar: Callable[[Fraction], Any]
    to_fraction: Callable[[Any], Fraction]


def _mpq(value: Fraction):
    value = Fraction(value)
    return gmpy2.mpq(value.numerator, value.denominator)


def _from_mpq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


PYTHON = Backend("python", _kernels_py.pivot, _kernels_py.min_ratio_rows, Fraction, Fraction)

COMPILED = None
if _compiled is not None and gmpy2 is not None:
    COMPILED = Backend("compiled", _compiled.pivot, _compiled.min_ratio_rows, _mpq, _from_mpq)


def available() -> list[str]:
    return [b.name for b in (COMPILED, PYTHON) if b is not None]


def get_backend(name: str | None = None) -> Backend:
    if name is None:
        name = os.environ.get("MNEP_KERNEL", "").strip().lower() or None
    if name is None:
        return COMPILED or PYTHON
    if name == "python":
        return PYTHON
    if name == "compiled":
        if COMPILED is None:
            raise RuntimeError("compiled kernel unavailable (extension not built or gmpy2 missing)")
        return COMPILED
    raise ValueError(f"unknown kernel backend {name!r}")


DEFAULT = get_backend()
