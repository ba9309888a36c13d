"""Exact-arithmetic Tsallis entropy laboratory.

Vectors may be given as text (``"1/2,1/4,1/4"``) or as a sequence of
``Fraction``/``int``/``str`` components. Exact results come back as
``Fraction``; values that need real arithmetic come back as ``float``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Union

from . import _core
from ._core import LabError, ResourceLimitError

__version__ = _core.__version__

Number = Union[Fraction, int, str]
Vector = Union[str, Iterable[Number]]
Value = Union[Fraction, float]

__all__ = [
    "LabError",
    "ResourceLimitError",
    "tsallis",
    "shannon",
    "closed_form",
    "axioms",
    "lemma1_residual",
    "f_map",
    "orbit",
    "reconstruct",
    "rational_reconstruct",
    "kernel",
]


def _text(x: Number) -> str:
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return str(Fraction(x)) if not isinstance(x, str) else x


def _vector(v: Vector) -> str:
    return v if isinstance(v, str) else ",".join(_text(x) for x in v)


def _value(pair) -> Value:
    exact, approx = pair
    return Fraction(exact) if exact is not None else approx


def _c(c: Number | None) -> str | None:
    return None if c is None else _text(c)


def tsallis(vector: Vector, alpha: Number, precision: int = _core.DEFAULT_PRECISION) -> Value:
    return _value(_core.tsallis(_vector(vector), _text(alpha), precision))


def shannon(vector: Vector, precision: int = _core.DEFAULT_PRECISION) -> Value:
    return _value(_core.shannon(_vector(vector), precision))


def closed_form(vector: Vector, alpha: Number, c: Number | None = None,
                precision: int = _core.DEFAULT_PRECISION) -> Value:
    """Closed form normalized by c = H(1/2,1/2) (Tsallis' own value by default)."""
    return _value(_core.closed_form(_vector(vector), _text(alpha), _c(c), precision))


def axioms(functional: str = "tsallis", alpha: Number = 2, max_denominator: int = 6, max_length: int = 4,
           samples: int = 0, seed: int = 0, precision: int = _core.DEFAULT_PRECISION):
    """Returns (all_passed, list of report dicts)."""
    ok, text = _core.axioms_report(functional, _text(alpha), max_denominator, max_length, samples, seed, precision)
    return ok, json.loads(text)


def lemma1_residual(p: Number, alpha: Number, functional: str = "tsallis") -> Value:
    return _value(_core.lemma1_residual(_text(p), _text(alpha), functional))


def f_map(p: Number) -> Fraction:
    return Fraction(_core.f_map(_text(p)))


def orbit(p: Number, max_steps: int = 0) -> dict:
    out = dict(_core.orbit(_text(p), max_steps))
    out["points"] = [Fraction(x) for x in out["points"]]
    return out


def reconstruct(vector: Vector, alpha: Number, functional: str = "tsallis") -> Value:
    return _value(_core.reconstruct(_vector(vector), _text(alpha), functional))


def rational_reconstruct(vector: Vector, alpha: Number, c: Number | None = None) -> Value:
    return _value(_core.rational_reconstruct(_vector(vector), _text(alpha), _c(c)))


def kernel(b: int, L: int, alpha: int = 2, cap: int = 250000) -> dict:
    return json.loads(_core.kernel(b, L, alpha, cap))
