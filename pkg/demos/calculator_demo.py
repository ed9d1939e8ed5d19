"""
Four arithmetic endpoints from one combinator
=============================================

Each endpoint is a read-only lens over a trivial state; merging them
with & gives the whole calculator in one expression.
"""

from lenserv import build_calculator, handle_get, prepare

calc = prepare(build_calculator())

for path in ("/add/2/3", "/sub/2/3", "/mul/4/5", "/div/7/2", "/div/-7/2"):
    r = handle_get(calc, path)
    print(f"GET {path:<12} -> {r.status} {r.body}")

# division by zero is a domain error, not a crash
r = handle_get(calc, "/div/7/0")
print(f"GET /div/7/0   -> {r.status} {r.body}")

r = handle_get(calc, "/pow/2/8")
print(f"GET /pow/2/8   -> {r.status} {r.body}")
