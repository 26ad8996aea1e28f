"""
Precise 2NF when it exists
==========================

The 2NF template keeps each key attribute's closure together. When no
dependency straddles the two halves, the result is lossless and
dependency preserving, and it never needs a transitivity-based split.
"""

from fdnorm import Schema, is_precisely_2nf, plan_precise_2nf, reject_illegitimate, synthesize_3nf

s = Schema("A1 A2 A3 A4 A5", [("A1", "A3"), ("A2", "A3"), ("A2", "A4"), ("A1 A2", "A5")])

plan = plan_precise_2nf(s)
print("\n".join(plan.narrative))

# keeping the shared attribute on one side only loses a dependency
bad = reject_illegitimate(s, "4a")
print("variant 4a loses:", [str(f) for f in bad.lost])

# 3NF synthesis works too, but the audit sees the steps it took
d = synthesize_3nf(s)
audit = is_precisely_2nf(d, s)
print([sorted(t) for t in d.attr_sets()], "precisely 2NF:", audit.precise)
