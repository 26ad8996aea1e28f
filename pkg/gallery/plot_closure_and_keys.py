"""
Closures, covers and candidate keys
===================================

Attribute closure answers most questions about a set of dependencies.
"""

from fdnorm import FD, Schema, attribute_closure, candidate_keys, implies, minimal_cover, prime_attributes

s = Schema("A1 A2 A3 A4 A5 A6 A7", [("A1 A2", "A7"), ("A1", "A3"), ("A2", "A4"), ("A4", "A5"), ("A5", "A6")])

# everything A2 reaches, directly or along the chain
print("A2+ =", sorted(attribute_closure({"A2"}, s.fds)))

# entailment is a closure test
print("A2 -> A6 holds:", implies(s.fds, FD("A2", "A6")))
print("A2 -> A3 holds:", implies(s.fds, FD("A2", "A3")))

# a redundant dependency disappears from the minimal cover
padded = s.fds | {FD("A2", "A5"), FD("A1 A3", "A3")}
for f in sorted(minimal_cover(padded), key=FD.sort_key):
    print("  ", f)

print("keys:", [sorted(k) for k in candidate_keys(s.universe, s.fds)])
print("prime:", sorted(prime_attributes(s.universe, s.fds)))
