"""
Certificates
============

A YES answer comes with a JSON certificate.  The verifier knows nothing
about the search: it replays the recorded moves, then rebuilds the input by
composing the contraction each move undoes.
"""

import json

from sacdecide import decide, parse_poly
from sacdecide.certify import decode, encode, from_decision, recompose, replay

u, v = parse_poly("x y + 1"), parse_poly("x^2 y + x")
cert = from_decision(decide(u, v))
text = encode(cert)
print(text)

# decoding and re-encoding gives the same bytes
assert encode(decode(text)) == text
print("replay:", replay(cert), " recompose:", recompose(cert))

# change one parameter and both checks fail
doc = json.loads(text)
doc["trace"][0]["b"] = "1"
tampered = decode(json.dumps(doc))
print("tampered replay:", replay(tampered), " recompose:", recompose(tampered))
