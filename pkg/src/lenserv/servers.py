"""Servers as parametrised dependent lenses, and the algebra that
composes them.

A ``Server`` has three container boundaries: ``left`` is the request
interface (shape values are parsed request paths, positions are what a
POST to that path answers with), ``param`` is the state interface, and
``right`` is the response interface (shape values are GET responses,
positions are POST request bodies).  The server itself is one dependent
lens from ``tensor(left, param)`` to ``right``: reads go forward,
writes come backward as a response position and leave as a state diff.

Composition is the whole point.  The combinators below compose routing,
handlers, and state in one move, and each has an operator spelling:

    "seg" / s      prefix a literal path segment
    NatS() / s     prefix a typed capture, echoed into the response
    a & b          merge two servers over one shared state
    a + b          juxtapose two servers with separate states
    a >> b         chain servers; a's responses feed b's requests
    s >> l         focus responses through a lens
    l << s         adapt requests through a lens

Handlers written for ``get_lens`` / ``post_lens`` signal domain
failures (division by zero, missing key) by raising ``HandlerError``;
the HTTP engine turns that into a 400 response.
"""

from dataclasses import dataclass

from .containers import (
    Container, agree, const_of, coproduct, pinned, product, tensor,
    unit_positions,
)
from .deplens import DepLens, dep_compose, dep_parallel, embed_plain
from .lens import BoundaryMismatch, PlainLens
from .values import (
    BoolS, Inl, Inr, IntS, NatS, Pair, ProdS, Schema, TextS, LitS, Unit,
    UnitS,
)


__all__ = [
    "Server", "HandlerError",
    "lens_server", "reparam_server", "seq_server", "pre_compose",
    "post_compose", "parallel_server", "ext_choice", "clone_choice",
    "state_server", "get_lens", "post_lens", "path_prefix",
    "capture_prefix",
]


class HandlerError(Exception):
    """Domain failure raised by an endpoint handler; maps to HTTP 400."""


@dataclass(frozen=True)
class Server:
    left: Container
    param: Container
    right: Container
    lens: DepLens

    # -- operator DSL -----------------------------------------------

    def __rtruediv__(self, other):
        if isinstance(other, str):
            return path_prefix(other, self)
        if isinstance(other, Schema):
            return capture_prefix(other, self)
        return NotImplemented

    def __and__(self, other):
        if isinstance(other, Server):
            return clone_choice(self, other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Server):
            return ext_choice(self, other)
        return NotImplemented

    def __rshift__(self, other):
        if isinstance(other, Server):
            return seq_server(self, other)
        if isinstance(other, (DepLens, PlainLens)):
            return post_compose(self, other)
        return NotImplemented

    def __rlshift__(self, other):
        if isinstance(other, (DepLens, PlainLens)):
            return pre_compose(other, self)
        return NotImplemented


def _server(left, param, right, view, update) -> Server:
    return Server(left, param, right,
                  DepLens(tensor(left, param), right, view, update))


def lens_server(l: PlainLens | DepLens) -> Server:
    """Embed a lens as a server with trivial (unit) state."""
    if isinstance(l, PlainLens):
        l = embed_plain(l)

    def update(v, r):
        return Pair(l.update(v.first, r), v.second)

    return _server(l.src, const_of(UnitS()), l.dst,
                   lambda v: l.view(v.first), update)


def reparam_server(s: Server, l: DepLens) -> Server:
    """Change the state interface of ``s`` by running ``l`` in front of
    it: reads of the old state go through ``l.view``, state diffs come
    back through ``l.update``."""
    if not agree(l.dst, s.param):
        raise BoundaryMismatch(f"reparam: {l.dst!r} does not meet {s.param!r}")

    def view(v):
        return s.lens.view(Pair(v.first, l.view(v.second)))

    def update(v, r):
        out = s.lens.update(Pair(v.first, l.view(v.second)), r)
        return Pair(out.first, l.update(v.second, out.second))

    return _server(s.left, l.src, s.right, view, update)


def seq_server(a: Server, b: Server) -> Server:
    """Chain two servers: ``a``'s responses become ``b``'s requests.
    The composite keeps both states, side by side."""
    if not agree(a.right, b.left):
        raise BoundaryMismatch(f"seq: {a.right!r} does not meet {b.left!r}")

    def view(v):
        x, st = v.first, v.second
        return b.lens.view(Pair(a.lens.view(Pair(x, st.first)), st.second))

    def update(v, arg):
        x, st = v.first, v.second
        mid = a.lens.view(Pair(x, st.first))
        rb = b.lens.update(Pair(mid, st.second), arg)
        ra = a.lens.update(Pair(x, st.first), rb.first)
        return Pair(ra.first, Pair(ra.second, rb.second))

    return _server(a.left, tensor(a.param, b.param), b.right, view, update)


def pre_compose(l: DepLens | PlainLens, s: Server) -> Server:
    """Adapt the request interface of ``s`` through ``l``; the
    response position flows back out through ``l.update``."""
    if isinstance(l, PlainLens):
        l = embed_plain(l)
    if not agree(l.dst, s.left):
        raise BoundaryMismatch(f"pre_compose: {l.dst!r} does not meet {s.left!r}")

    def view(v):
        return s.lens.view(Pair(l.view(v.first), v.second))

    def update(v, r):
        out = s.lens.update(Pair(l.view(v.first), v.second), r)
        return Pair(l.update(v.first, out.first), out.second)

    return _server(l.src, s.param, s.right, view, update)


def post_compose(s: Server, l: DepLens | PlainLens) -> Server:
    """Focus the response interface of ``s`` through ``l``: GETs see
    the focused part, POST bodies are widened back into a full response
    position before ``s`` handles them."""
    if isinstance(l, PlainLens):
        l = embed_plain(l)
    if not agree(s.right, l.src):
        raise BoundaryMismatch(f"post_compose: {s.right!r} does not meet {l.src!r}")

    def view(v):
        return l.view(s.lens.view(v))

    def update(v, r):
        mid = s.lens.view(v)
        return s.lens.update(v, l.update(mid, r))

    return _server(s.left, s.param, l.dst, view, update)


def parallel_server(a: Server, b: Server) -> Server:
    """Both servers at once: requests, states, and responses all pair
    up componentwise."""
    left = tensor(a.left, b.left)
    param = tensor(a.param, b.param)
    right = tensor(a.right, b.right)

    def reassoc(v):
        return Pair(Pair(v.first.first, v.second.first),
                    Pair(v.first.second, v.second.second))

    adapter = DepLens(
        tensor(left, param),
        tensor(tensor(a.left, a.param), tensor(b.left, b.param)),
        view=reassoc,
        update=lambda v, p: reassoc(p),
    )
    return Server(left, param, right,
                  dep_compose(adapter, dep_parallel(a.lens, b.lens)))


def ext_choice(a: Server, b: Server) -> Server:
    """External choice: route to one server or the other by the request
    tag.  States stay separate; a request for one side can only ever
    produce a diff for that side's state."""

    def view(v):
        tag, st = v.first, v.second
        if isinstance(tag, Inl):
            return Inl(a.lens.view(Pair(tag.value, st.first)))
        return Inr(b.lens.view(Pair(tag.value, st.second)))

    def update(v, r):
        tag, st = v.first, v.second
        if isinstance(tag, Inl):
            out = a.lens.update(Pair(tag.value, st.first), r)
            return Pair(out.first, Inl(out.second))
        out = b.lens.update(Pair(tag.value, st.second), r)
        return Pair(out.first, Inr(out.second))

    return _server(coproduct(a.left, b.left), product(a.param, b.param),
                   coproduct(a.right, b.right), view, update)


def clone_choice(a: Server, b: Server) -> Server:
    """External choice between two servers that share one state.  Both
    sides read the same state; whichever side handles the request also
    writes it."""
    if not agree(a.param, b.param):
        raise BoundaryMismatch(
            f"clone_choice needs a shared state interface: "
            f"{a.param!r} vs {b.param!r}")
    shared = a.param
    duplicate = DepLens(
        shared, product(shared, shared),
        view=lambda p: Pair(p, p),
        update=lambda p, d: d.value,  # either side's diff is the diff
    )
    return reparam_server(ext_choice(a, b), duplicate)


def state_server(c: Container) -> Server:
    """The whole state as an endpoint: GET returns it, POST replaces
    it (the body schema is the state's own position schema)."""

    def update(v, r):
        return Pair(Unit(), r)

    return _server(const_of(UnitS()), c, c, lambda v: v.second, update)


def _require_const_state(state: Container, who: str) -> None:
    if state.form is None or state.form[0] != "pinned" or state.form[1] != state.shape:
        raise ValueError(
            f"{who} needs a const state container (positions = shape everywhere), "
            f"got {state!r}")


def get_lens(uri: Schema, state: Container, resp: Schema, handler) -> Server:
    """A read-only endpoint.  ``handler(state_value, uri_value)``
    computes the response; the state is never changed (a POST to this
    endpoint carries a trivial body and writes the state back as-is).
    """
    _require_const_state(state, "get_lens")

    def view(v):
        return handler(v.second, v.first)

    def update(v, r):
        return Pair(Unit(), v.second)

    return _server(unit_positions(uri), state, unit_positions(resp), view, update)


def post_lens(uri: Schema, state: Container, body: Schema, handler) -> Server:
    """A write-only endpoint.  ``handler(state_value, uri_value,
    body_value)`` computes the replacement state; GET responds with
    unit."""
    _require_const_state(state, "post_lens")

    def update(v, r):
        return Pair(Unit(), handler(v.second, v.first, r))

    return _server(unit_positions(uri), state, pinned(UnitS(), body),
                   lambda v: Unit(), update)


def path_prefix(segment: str, s: Server) -> Server:
    """Mount ``s`` under a fixed path segment."""
    lit = LitS(segment)  # validates the segment text
    left = Container(ProdS(lit, s.left.shape),
                     lambda v: s.left.position(v.second))
    adapter = DepLens(left, s.left, lambda v: v.second, lambda v, p: p)
    return pre_compose(adapter, s)


def capture_prefix(cap: Schema, s: Server) -> Server:
    """Mount ``s`` under a typed capture segment.  The captured value
    is paired onto both the request and the response, so downstream
    composition can still see it; positions pass through untouched."""
    if not isinstance(cap, (IntS, NatS, TextS, BoolS)):
        raise ValueError(f"captures must be Int/Nat/Text/Bool segments, got {cap!r}")
    left = Container(ProdS(cap, s.left.shape),
                     lambda v: s.left.position(v.second))
    right = Container(ProdS(cap, s.right.shape),
                      lambda v: s.right.position(v.second))

    def view(v):
        return Pair(v.first.first, s.lens.view(Pair(v.first.second, v.second)))

    def update(v, r):
        return s.lens.update(Pair(v.first.second, v.second), r)

    return _server(left, s.param, right, view, update)
