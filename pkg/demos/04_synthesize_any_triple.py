"""Synthesize, inspect and serialize a protocol for an arbitrary triple."""

from gbs_locc import Triple, synthesize, verify_perfect_discrimination
from gbs_locc.document import ProtocolDocument

t = Triple.from_pairs(8, [(0, 0), (2, 0), (0, 4)])
protocol, cert = synthesize(t)

print("route:", cert.route)
print("trace:", [(s.kind, s.param) for s in cert.trace])
print("canonical:", [i.pair() for i in cert.canonical], "replays:", cert.replays())
print("steps:", len(protocol.steps))
print(verify_perfect_discrimination(t.states(), protocol).summary())

doc = ProtocolDocument(t.dim, t.indices, protocol, cert)
text = doc.dumps()
print("JSON size:", len(text), "round trip equal:", ProtocolDocument.loads(text) == doc)

ext = Triple.from_pairs(4, [(0, 0), (3, 0), (0, 2)])
p, c = synthesize(ext)
print(c.route, "protocol:", p)
