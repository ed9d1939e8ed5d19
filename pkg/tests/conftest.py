"""Shared test plumbing: free ports, a tiny HTTP client, and a context
manager that runs a server value on a real socket for a test's duration."""

import socket
from contextlib import contextmanager
from http.client import HTTPConnection

from lenserv import EngineConfig, prepare, serve_background


def free_port() -> int:
    s = socket.socket()
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
    s.close()
    return port


class Client:
    """One keep-alive connection to one server."""

    def __init__(self, port: int):
        self.conn = HTTPConnection("127.0.0.1", port, timeout=10)

    def request(self, method: str, path: str, body: str | None = None):
        self.conn.request(method, path, body=body)
        r = self.conn.getresponse()
        return r.status, r.read().decode("utf-8")

    def get(self, path: str):
        return self.request("GET", path)

    def post(self, path: str, body: str):
        return self.request("POST", path, body)

    def close(self):
        self.conn.close()


@contextmanager
def running(server, initial=None):
    """Serve ``server`` on a fresh port; yield (prepared, client)."""
    p = prepare(server, EngineConfig(port=free_port()), initial=initial)
    httpd = serve_background(p)
    client = Client(p.config.port)
    try:
        yield p, client
    finally:
        client.close()
        httpd.shutdown()
        httpd.server_close()
