"""
A per-user todo list: one reader and one writer over a shared map
=================================================================
"""

from lenserv import build_todo, handle_get, handle_post, prepare

todos = prepare(build_todo())

print("GET /all/7 ->", handle_get(todos, "/all/7").body)

handle_post(todos, "/add/7", '"Buy milk"')
handle_post(todos, "/add/7", '"Call"')
handle_post(todos, "/add/9", '"Water plants"')

# newest first: the writer prepends
print("GET /all/7 ->", handle_get(todos, "/all/7").body)
print("GET /all/9 ->", handle_get(todos, "/all/9").body)

# user ids are naturals, so /add/x has no route at all,
# and a non-string body fails typed decoding
r = handle_post(todos, "/add/x", '"y"')
print(f"POST /add/x -> {r.status} {r.body}")
r = handle_post(todos, "/add/7", "42")
print(f"POST /add/7 42 -> {r.status} {r.body}")
