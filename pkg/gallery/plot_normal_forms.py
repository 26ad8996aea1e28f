"""
Three decompositions of one table
=================================

A 2NF database can still carry transitive dependencies. The witnesses
say where they are.
"""

from fdnorm import classify_database, make_decomposition, parse_schema

s = parse_schema("""
attributes: A1 A2 A3 A4 A5 A6 A7
fd: A1 A2 -> A7
fd: A1 -> A3
fd: A2 -> A4
fd: A4 -> A5
fd: A5 -> A6
""").schema

candidates = {
    "fully split": ["A1 A2 A7", "A1 A3", "A2 A4", "A4 A5", "A5 A6"],
    "one chain step split": ["A1 A2 A7", "A1 A3", "A2 A4", "A4 A5 A6"],
    "key closures only": ["A1 A2 A7", "A1 A3", "A2 A4 A5 A6"],
}

for title, tables in candidates.items():
    label = classify_database(make_decomposition(s, tables), s)
    print(f"{title}: {label.level}")
    for name, ws in label.table_witnesses.items():
        for w in ws:
            print(f"    {name}: {w}")
