"""
Schemas that cannot stop at 2NF
===============================

Two chains start at the two halves of the key and meet in one
dependency. Wherever the dependent goes, something breaks.
"""

from fdnorm import parse_schema, plan_precise_2nf, theorem1_verdict

s = parse_schema("""
attributes: sid cid st cr rd
fd: sid -> st
fd: cid -> cr
fd: st cr -> rd
""").schema

v = theorem1_verdict(s)
print("impossible:", v.impossible)
print(v.witness)
for b in v.branches:
    print("  -", b)

# the planner tries both placements and reports why each fails
plan = plan_precise_2nf(s)
for p in plan.placements:
    print(p.name, [sorted(t) for t in p.decomposition.attr_sets()], "->", p.reason)
