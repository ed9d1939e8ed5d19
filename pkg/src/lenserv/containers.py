"""Containers: a shape schema together with a schema of positions for
every shape value.

A container ``(shape, position)`` is the interface of one side of a
server: shape values travel forward (requests, reads), and for each
shape value the position schema says what may travel backward at that
point (bodies, state diffs).  Four ways of combining them cover the
whole server algebra:

* ``product``    - both shapes; a position from one side or the other
* ``coproduct``  - one shape or the other; positions follow the tag
* ``tensor``     - both shapes; both positions
* ``const_of``   - positions ignore the shape value entirely

Containers built from these combinators carry a structural description
(``form``), which later layers use to compare containers, derive state
update actions, and pick default values.  Hand-rolled containers have
``form=None`` and are compared extensionally on sampled shape values.
"""

import random
from dataclasses import dataclass
from typing import Callable

from .values import (
    Inl, Inr, ProdS, Schema, SumS, UnitS, Value, generate_value,
)


__all__ = [
    "Container", "const_of", "unit_positions", "pinned", "product",
    "coproduct", "tensor", "agree",
]


@dataclass(frozen=True)
class Container:
    shape: Schema
    position: Callable[[Value], Schema]
    form: tuple | None = None

    def __repr__(self):
        if self.form is None:
            return f"Container({self.shape!r}, <positions>)"
        tag = self.form[0]
        if tag == "pinned":
            return f"Container({self.shape!r}, pinned {self.form[1]!r})"
        return f"{tag}({self.form[1]!r}, {self.form[2]!r})"


def const_of(s: Schema) -> Container:
    """Shape ``s`` with position ``s`` everywhere: reads and writes are
    the same kind of thing.  This is what plain state looks like."""
    return Container(s, lambda v: s, form=("pinned", s))


def unit_positions(s: Schema) -> Container:
    """Shape ``s`` with the trivial position everywhere: nothing flows
    backward at any point."""
    u = UnitS()
    return Container(s, lambda v: u, form=("pinned", u))


def pinned(shape: Schema, pos: Schema) -> Container:
    """Shape ``shape`` whose position schema is ``pos`` at every value."""
    return Container(shape, lambda v: pos, form=("pinned", pos))


def product(a: Container, b: Container) -> Container:
    """Both shapes; a position addresses one component or the other."""
    def pos(v: Value) -> Schema:
        return SumS(a.position(v.first), b.position(v.second))
    return Container(ProdS(a.shape, b.shape), pos, form=("product", a, b))


def coproduct(a: Container, b: Container) -> Container:
    """Either shape, and the positions of whichever side is present.
    Note the position schema itself is untagged: at ``Inl x`` it is
    exactly ``a.position(x)``."""
    def pos(v: Value) -> Schema:
        if isinstance(v, Inl):
            return a.position(v.value)
        if isinstance(v, Inr):
            return b.position(v.value)
        raise TypeError(f"coproduct shape value must be tagged, got {v!r}")
    return Container(SumS(a.shape, b.shape), pos, form=("coproduct", a, b))


def tensor(a: Container, b: Container) -> Container:
    """Both shapes and both positions, componentwise."""
    def pos(v: Value) -> Schema:
        return ProdS(a.position(v.first), b.position(v.second))
    return Container(ProdS(a.shape, b.shape), pos, form=("tensor", a, b))


def agree(a: Container, b: Container, samples: int = 24) -> bool:
    """Decide (well, approximate) container equality for composition
    preconditions: shapes structurally, position families structurally
    when both carry a form, extensionally on sampled shape values
    otherwise."""
    if a is b:
        return True
    if a.shape != b.shape:
        return False
    if a.form is not None and b.form is not None:
        return _forms_equal(a.form, b.form)
    rng = random.Random(7)
    for _ in range(samples):
        v = generate_value(a.shape, rng)
        if a.position(v) != b.position(v):
            return False
    return True


def _forms_equal(fa: tuple, fb: tuple) -> bool:
    if fa[0] != fb[0]:
        return False
    if fa[0] == "pinned":
        return fa[1] == fb[1]
    return agree(fa[1], fb[1]) and agree(fa[2], fb[2])
