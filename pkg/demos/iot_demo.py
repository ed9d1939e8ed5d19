"""
Lens-focused state: one tree, three endpoints
=============================================

The whole home state is a pair (boiler, (light1, light2)).  Each
endpoint is the *same* whole-state server focused through a projection
lens, so writing one leaf provably cannot move the others: the write
goes through fst/snd updates and nothing else.
"""

from lenserv import build_iot, encode_json, handle_get, handle_post, prepare

home = prepare(build_iot())


def show(note):
    print(f"{note:<28} state = {encode_json(home.cell.snapshot())}")


show("fresh")

handle_post(home, "/boiler", "true")
show("after POST /boiler true")

handle_post(home, "/lights/1", "true")
show("after POST /lights/1 true")

# reads go through the same lenses, forward
for path in ("/boiler", "/lights/1", "/lights/2"):
    print(f"GET {path:<10} -> {handle_get(home, path).body}")

# the body is typed: this endpoint's position schema is Bool
r = handle_post(home, "/boiler", '"yes"')
print(f'POST /boiler "yes" -> {r.status} {r.body}')
show("unchanged by the bad POST")
