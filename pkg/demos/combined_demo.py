"""
Three servers under one roof
============================

External choice (+) mounts whole servers side by side.  Their states
combine as a product, and the choice combinator guarantees a request
for one sub-API can only produce a diff for that sub-API's slot; the
other two components are structurally untouched, not just unchanged by
luck.
"""

from lenserv import (
    build_combined, describe_routes, encode_json, handle_get, handle_post,
    prepare,
)

app = prepare(build_combined())

print("all routes:")
for route in describe_routes(app.server.left.shape):
    print("  " + route)

print()
print("initial state:", encode_json(app.cell.snapshot()))

# each POST moves exactly one component of the state triple
handle_post(app, "/todo/add/1", '"write the demo"')
print("after todo POST:", encode_json(app.cell.snapshot()))

handle_post(app, "/iot/boiler", "true")
print("after iot POST: ", encode_json(app.cell.snapshot()))

# the calculator still answers; its state slot stays null forever
print()
print("GET /calculator/mul/6/7 ->", handle_get(app, "/calculator/mul/6/7").body)
print("GET /todo/all/1         ->", handle_get(app, "/todo/all/1").body)
print("GET /iot/boiler         ->", handle_get(app, "/iot/boiler").body)

# unprefixed paths stopped existing when the servers were mounted
print("GET /boiler             ->", handle_get(app, "/boiler").status)
