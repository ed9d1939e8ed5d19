"""Dependent lenses: morphisms between containers.

The backward direction here is position-indexed: ``update`` receives a
source shape value and a position taken *at the forward image of that
value*, and must return a position at the value itself.  Plain lenses
embed as the special case where positions ignore the shape value.
"""

from dataclasses import dataclass
from typing import Callable

from .containers import Container, agree, pinned, tensor
from .lens import BoundaryMismatch, PlainLens
from .values import Pair, Value


__all__ = ["DepLens", "dep_identity", "dep_compose", "dep_parallel", "embed_plain"]


@dataclass(frozen=True)
class DepLens:
    src: Container
    dst: Container
    view: Callable[[Value], Value]
    update: Callable[[Value, Value], Value]

    def __rshift__(self, other):
        if isinstance(other, DepLens):
            return dep_compose(self, other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, DepLens):
            return dep_parallel(self, other)
        return NotImplemented


def dep_identity(c: Container) -> DepLens:
    return DepLens(c, c, lambda v: v, lambda v, p: p)


def dep_compose(a: DepLens, b: DepLens) -> DepLens:
    if not agree(a.dst, b.src):
        raise BoundaryMismatch(f"cannot compose: {a.dst!r} does not meet {b.src!r}")
    return DepLens(
        a.src, b.dst,
        view=lambda v: b.view(a.view(v)),
        update=lambda v, p: a.update(v, b.update(a.view(v), p)),
    )


def dep_parallel(a: DepLens, b: DepLens) -> DepLens:
    return DepLens(
        tensor(a.src, b.src), tensor(a.dst, b.dst),
        view=lambda v: Pair(a.view(v.first), b.view(v.second)),
        update=lambda v, p: Pair(a.update(v.first, p.first), b.update(v.second, p.second)),
    )


def embed_plain(l: PlainLens) -> DepLens:
    """A plain lens is a dependent lens whose positions are constant."""
    return DepLens(
        pinned(l.src.fwd, l.src.bwd),
        pinned(l.dst.fwd, l.dst.bwd),
        view=l.view,
        update=l.update,
    )
