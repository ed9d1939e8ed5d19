"""HTTP engine: drive a server value over actual HTTP.

``prepare`` checks a server is runnable (its request schema has a path
grammar, its state container has a derivable update action), builds the
initial state, and returns a PreparedServer.  ``handle_get`` and
``handle_post`` are pure request->response functions over that value,
so everything short of sockets is unit-testable; ``serve`` wraps them
in a threaded stdlib HTTP server.

Exactly two methods exist.  GET runs the lens forward and never touches
state.  POST parses the body at the position schema the forward pass
picked out, runs the lens backward, and applies the resulting diff; the
whole read-update-write sequence happens inside one state transaction,
so concurrent POSTs serialize.

Status mapping: 200 success, 400 bad body or handler-signalled domain
error, 404 no route, 405 other methods, 413 oversized body, 500 broken
typing contract (a library or handler bug, never a client mistake).
Every response body is JSON; errors look like ``{"error": "..."}``.
"""

import json
import logging
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from time import perf_counter

from .routing import NotRoutable, UriParser, parser_for, split_path
from .servers import HandlerError, Server
from .state import (
    ActionDerivationError, StateCell, StateContractError, derive_action,
    initial_state,
)
from .values import (
    DecodeError, Inl, Inr, Pair, SumS, Value, conforms, decode_json,
    encode_json,
)


__all__ = [
    "EngineConfig", "HttpResponse", "PrepareError", "PreparedServer",
    "prepare", "handle_get", "handle_post", "serve", "serve_background",
]


class PrepareError(Exception):
    """The server value cannot be driven by the engine as configured."""


@dataclass(frozen=True)
class EngineConfig:
    port: int = 8080
    max_body_bytes: int = 1 << 20
    logger: logging.Logger | None = None

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port must be in 1..65535, got {self.port}")
        if self.max_body_bytes <= 0:
            raise ValueError("max_body_bytes must be positive")


@dataclass(frozen=True)
class HttpResponse:
    status: int
    body: str

    @property
    def content_type(self) -> str:
        return "application/json"


@dataclass(frozen=True)
class PreparedServer:
    server: Server
    parser: UriParser
    cell: StateCell
    config: EngineConfig


def prepare(server: Server, config: EngineConfig | None = None,
            initial: Value | None = None) -> PreparedServer:
    """Validate and instantiate a server for running.

    Raises PrepareError when the request schema contains a part with
    no path grammar, when the state container has no derivable update
    action, or when a supplied initial state does not conform.
    """
    config = config if config is not None else EngineConfig()
    try:
        parser = parser_for(server.left.shape)
    except NotRoutable as exc:
        raise PrepareError(f"request schema is not routable: {exc}") from None
    try:
        action = derive_action(server.param)
    except ActionDerivationError as exc:
        raise PrepareError(f"state has no update action: {exc}") from None
    init = initial if initial is not None else initial_state(server.param)
    try:
        cell = StateCell(server.param, action, init)
    except StateContractError as exc:
        raise PrepareError(str(exc)) from None
    return PreparedServer(server, parser, cell, config)


def _error(status: int, message: str) -> HttpResponse:
    return HttpResponse(status, '{"error":%s}' % json.dumps(message, ensure_ascii=False))


def _strip_route_tags(schema, v: Value) -> Value:
    # Choice composition tags forward values with the route that
    # produced them; the client named one route, so tags are not part
    # of the payload.
    while isinstance(schema, SumS):
        if isinstance(v, Inl):
            schema, v = schema.left, v.value
        elif isinstance(v, Inr):
            schema, v = schema.right, v.value
        else:
            break
    return v


def _route(p: PreparedServer, path: str) -> Value | None:
    segments = split_path(path)
    if segments is None:
        return None
    out = p.parser.run(segments, 0)
    if out is None or out[1] != len(segments):
        return None
    return out[0]


def handle_get(p: PreparedServer, path: str) -> HttpResponse:
    x = _route(p, path)
    if x is None:
        return _error(404, f"no route matches {path}")
    state = p.cell.snapshot()
    try:
        y = p.server.lens.view(Pair(x, state))
    except HandlerError as exc:
        return _error(400, str(exc))
    except Exception as exc:
        return _error(500, f"forward pass failed: {exc}")
    if not conforms(p.server.right.shape, y):
        return _error(500, "forward pass broke the response contract")
    return HttpResponse(200, encode_json(_strip_route_tags(p.server.right.shape, y)))


def handle_post(p: PreparedServer, path: str, body: str) -> HttpResponse:
    x = _route(p, path)
    if x is None:
        return _error(404, f"no route matches {path}")
    with p.cell.transaction():
        state = p.cell.snapshot()
        try:
            y = p.server.lens.view(Pair(x, state))
            body_schema = p.server.right.position(y)
        except HandlerError as exc:
            return _error(400, str(exc))
        except Exception as exc:
            return _error(500, f"forward pass failed: {exc}")
        try:
            r = decode_json(body_schema, body)
        except DecodeError as exc:
            return _error(400, str(exc))
        try:
            out = p.server.lens.update(Pair(x, state), r)
            response, diff = out.first, out.second
        except HandlerError as exc:
            return _error(400, str(exc))
        except Exception as exc:
            return _error(500, f"backward pass failed: {exc}")
        try:
            p.cell.apply_diff(diff)
        except StateContractError as exc:
            return _error(500, str(exc))
    try:
        resp_schema = p.server.left.position(x)
    except Exception as exc:
        return _error(500, f"response position failed: {exc}")
    if not conforms(resp_schema, response):
        return _error(500, "backward pass broke the response contract")
    return HttpResponse(200, encode_json(response))


# ---------------------------------------------------------------------------
# Socket layer


def _make_handler(p: PreparedServer, log: logging.Logger):
    max_body = p.config.max_body_bytes

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"
        timeout = 30  # reap idle keep-alive connections

        def _content_length(self) -> int:
            try:
                return int(self.headers.get("Content-Length") or 0)
            except ValueError:
                return 0

        def _finish(self, resp: HttpResponse, started: float) -> None:
            data = resp.body.encode("utf-8")
            self.send_response(resp.status)
            self.send_header("Content-Type", resp.content_type)
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            if self.command != "HEAD":
                self.wfile.write(data)
            log.info("%s %s -> %d (%.1f ms)", self.command, self.path,
                     resp.status, (perf_counter() - started) * 1000)

        def _dispatch(self) -> None:
            started = perf_counter()
            path = self.path.split("?", 1)[0]
            length = self._content_length()
            if length > max_body:
                # Refuse without reading; a connection with an unread
                # body on it cannot be reused.
                self.close_connection = True
                self._finish(_error(413, "request body too large"), started)
                return
            raw = self.rfile.read(length) if length else b""
            if self.command == "GET":
                resp = handle_get(p, path)
            elif self.command == "POST":
                try:
                    resp = handle_post(p, path, raw.decode("utf-8"))
                except UnicodeDecodeError:
                    resp = _error(400, "request body is not valid UTF-8")
            else:
                resp = _error(405, f"method {self.command} not supported")
            self._finish(resp, started)

        do_GET = _dispatch
        do_POST = _dispatch

        def __getattr__(self, name):
            # every other method (PUT, DELETE, anything) lands in
            # _dispatch and comes back as a 405
            if name.startswith("do_"):
                return self._dispatch
            raise AttributeError(name)

        def log_message(self, fmt, *args):
            log.debug(fmt, *args)

    return Handler


def _build(p: PreparedServer) -> ThreadingHTTPServer:
    log = p.config.logger or logging.getLogger("lenserv.engine")
    httpd = ThreadingHTTPServer(("127.0.0.1", p.config.port), _make_handler(p, log))
    # Connection threads must not block shutdown: an idle keep-alive
    # connection would otherwise pin server_close until its peer went
    # away.  State integrity does not depend on joining them; every
    # read-update-write runs inside the cell's lock.
    httpd.daemon_threads = True
    httpd.block_on_close = False
    return httpd


def serve(p: PreparedServer) -> None:
    """Serve until interrupted.  A diff is applied under the state lock
    or not at all, so shutdown never leaves state half-written."""
    log = p.config.logger or logging.getLogger("lenserv.engine")
    httpd = _build(p)
    log.info("listening on 127.0.0.1:%d", httpd.server_port)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
        log.info("shut down")


def serve_background(p: PreparedServer) -> ThreadingHTTPServer:
    """Start serving on a daemon thread; shut the result down with
    ``shutdown()`` then ``server_close()``.  For tests and demos."""
    httpd = _build(p)
    threading.Thread(target=httpd.serve_forever, daemon=True).start()
    return httpd
