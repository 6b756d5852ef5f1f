"""Selfmaps of the digital cycle C_n: rotations, the flip, constants, and
the three-way homotopy classification for n > 4 with the induced maps on
homology each class must have."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import ParameterError, VertexMap, cycle_image, is_continuous

__all__ = [
    "CycleTag",
    "CycleClass",
    "rotation_map",
    "flip_map",
    "cycle_constant_map",
    "classify_cycle_selfmap",
    "expected_induced",
]


class CycleTag(enum.Enum):
    IDENTITY = "IdentityClass"
    FLIP = "FlipClass"
    CONSTANT = "ConstantClass"


@dataclass(frozen=True)
class CycleClass:
    tag: CycleTag
    parameter: int | None = None

    def __str__(self):
        return self.tag.value if self.parameter is None else f"{self.tag.value}({self.parameter})"


def _check_n(n: int) -> None:
    if n < 4:
        raise ParameterError(f"cycle selfmaps are only modelled for n >= 4, got {n}")


def rotation_map(n: int, d: int) -> VertexMap:
    """``r_d(c_i) = c_{i+d}``."""
    _check_n(n)
    C = cycle_image(n)
    return VertexMap(C, C, tuple((i + d) % n for i in range(n)))


def flip_map(n: int) -> VertexMap:
    """``l(c_i) = c_{-i}``."""
    _check_n(n)
    C = cycle_image(n)
    return VertexMap(C, C, tuple(-i % n for i in range(n)))


def cycle_constant_map(n: int, target: int = 0) -> VertexMap:
    _check_n(n)
    C = cycle_image(n)
    return VertexMap(C, C, (target % n,) * n)


def _cycle_n(f: VertexMap) -> int:
    n = f.dom.n
    if n < 3 or f.dom != cycle_image(n) or f.cod != f.dom:
        raise ParameterError("expected a selfmap of a digital cycle")
    if n <= 4:
        raise ParameterError(f"C_{n} is outside the classification theorem (needs n > 4)")
    if not is_continuous(f):
        raise ParameterError("classification needs a continuous map")
    return n


def classify_cycle_selfmap(f: VertexMap) -> CycleClass:
    """IdentityClass(d) iff f = r_d, FlipClass(d) iff f = r_d o l, otherwise
    ConstantClass."""
    n = _cycle_n(f)
    d = f.values[0]
    if all(f.values[i] == (i + d) % n for i in range(n)):
        return CycleClass(CycleTag.IDENTITY, d)
    if all(f.values[i] == (d - i) % n for i in range(n)):
        return CycleClass(CycleTag.FLIP, d)
    return CycleClass(CycleTag.CONSTANT)


def expected_induced(f: VertexMap, q: int) -> int:
    """The multiplier f_{*,q} must act by on H_q(C_n) (Z for q <= 1, and 0
    above)."""
    cls = classify_cycle_selfmap(f)
    if q < 0:
        raise ParameterError("q must be nonnegative")
    if q == 0:
        return 1
    if q > 1:
        return 0
    return {CycleTag.IDENTITY: 1, CycleTag.FLIP: -1, CycleTag.CONSTANT: 0}[cls.tag]
