"""The worked examples as Python objects (the same data as the JSON corpus)."""
from __future__ import annotations

from importlib import resources

from . import jsonio
from .divisors import Curve, DivisorialFan, PolyDivisor


def corpus_text(name: str) -> bytes:
    return resources.files("tvarih").joinpath("corpus", name).read_bytes()


def load_corpus(name: str) -> DivisorialFan:
    return jsonio.parse(corpus_text(name))


def quadric_threefold() -> DivisorialFan:
    return load_corpus("quadric.json")


def p2_surface() -> DivisorialFan:
    return load_corpus("p2-surface.json")


def _single(name: str) -> tuple[PolyDivisor, Curve]:
    e = load_corpus(name)
    return e.generators[0], e.curve


def affine_threefold() -> tuple[PolyDivisor, Curve]:
    """Divisor over P^1 with tail Q>=0^2 and coefficients (1/2,1/2)+tail, conv(e1,e2)+tail."""
    return _single("affine-threefold.json")


def nonpointed_threefold() -> tuple[PolyDivisor, Curve]:
    """Divisor with a one-dimensional tail whose closed orbit has disconnected stabilizers."""
    return _single("nonpointed-threefold.json")

