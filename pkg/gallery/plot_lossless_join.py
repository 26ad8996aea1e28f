"""
Why the key table stays
=======================

When the closures of the two key attributes cover the whole table, the
two closure tables alone do not join back losslessly. A small instance
shows the extra tuple.
"""

from fdnorm import Schema, chase_tableau, decompose_2nf, generate_instance, instance_join_test, make_decomposition

s = Schema("A1 A2 A3 A4", [("A1", "A3"), ("A2", "A4")])

two = make_decomposition(s, ["A1 A3", "A2 A4"])
tab = chase_tableau(two, s)
print(tab.render())
print("lossless:", tab.lossless)

# three key values, joined back from the two projections
r = generate_instance(s, key_rows=[(0, 0), (0, 1), (1, 0)])
report = instance_join_test(r, two)
print(f"{report.original_size} tuples -> {report.join_size} after the join")
for row in report.spurious:
    print("  spurious:", dict(zip(r.columns, row)))

# the template adds the bare key table and the extra tuple is gone
three = decompose_2nf(s)
print([sorted(t) for t in three.attr_sets()])
print("spurious:", instance_join_test(r, three).spurious_count)
