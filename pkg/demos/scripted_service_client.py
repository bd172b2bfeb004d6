"""Drive the HTTP service the way a UI would.

Starts the session service on a free port, creates a session, posts a few
utterances (silence is an explicit flag, never an empty string), and reads
back the snapshots.

Run with:  python3 demos/scripted_service_client.py
"""

import socket
import threading
import time

import httpx
import uvicorn

from umplex.service import create_app

sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
sock.bind(("127.0.0.1", 0))
port = sock.getsockname()[1]
server = uvicorn.Server(uvicorn.Config(create_app(), log_level="error"))
threading.Thread(target=server.run, kwargs={"sockets": [sock]}, daemon=True).start()
while not server.started:
    time.sleep(0.05)
base = f"http://127.0.0.1:{port}"
print(f"service listening on {base}\n")

created = httpx.post(
    base + "/sessions",
    json={"states": ["NoHeat", "Semi", "Heat"], "initial": "Heat", "selector": "cyclic"},
).json()
sid = created["session"]
print(f"session {sid[:8]}... starts in {created['state']}")

for body in [{"silence": True}, {"text": "I go to grandma now"}, {"text": "no!"}, {"text": "no!"}]:
    step = httpx.post(f"{base}/sessions/{sid}/utterances", json=body).json()
    label = "<silence>" if step["utterance"] == "" else step["utterance"]
    print(f"\n{label!r} fired {step['rule']}: {step['antecedent']} -> {step['consequent']}")
    for entry in step["entries"][1:]:
        print(f"  correction: {entry['utterance']!r} now maps {entry['antecedent']} -> {entry['consequent']}")

state = httpx.get(f"{base}/sessions/{sid}/state").json()
lexicon = httpx.get(f"{base}/sessions/{sid}/lexicon").json()
print(f"\nafter {state['iteration']} steps the device is in {state['state']}")
print(f"lexicon holds {len(lexicon['entries'])} utterances")

server.should_exit = True
