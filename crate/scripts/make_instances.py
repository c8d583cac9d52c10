"""Regenerate the DIMACS coloring instances shipped in crates/core/data.

myciel*, queen* are rebuilt from their standard constructions; jean comes from
networkx's copy of the Stanford GraphBase co-appearance data (77 characters,
254 edges) padded with the three isolated vertices of the original file.
anna cannot be rebuilt offline; drop the original anna.col into the data
directory to enable it.
"""
import itertools
import pathlib
import sys

import networkx as nx

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "crates/core/data")


def write_col(name, n, edges, comment):
    edges = sorted({tuple(sorted(e)) for e in edges})
    lines = [f"c {comment}", f"p edge {n} {len(edges)}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    (OUT / f"{name}.col").write_text("\n".join(lines) + "\n")
    print(name, n, len(edges))


def mycielski(order):
    # DIMACS myciel3 is the Groetzsch graph, i.e. networkx's mycielski_graph(4).
    g = nx.mycielski_graph(order + 1)
    return g.number_of_nodes(), list(g.edges())


def queen(rows, cols):
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    idx = {cell: i for i, cell in enumerate(cells)}
    edges = []
    for a, b in itertools.combinations(cells, 2):
        dr, dc = a[0] - b[0], a[1] - b[1]
        if dr == 0 or dc == 0 or abs(dr) == abs(dc):
            edges.append((idx[a], idx[b]))
    return rows * cols, edges


for order in (3, 4, 5, 6):
    n, e = mycielski(order)
    write_col(f"myciel{order}", n, e, f"Mycielski graph myciel{order}")

for r, c in [(5, 5), (6, 6), (7, 7), (8, 8), (9, 9), (8, 12), (11, 11), (13, 13)]:
    n, e = queen(r, c)
    write_col(f"queen{r}_{c}", n, e, f"{r}x{c} queen graph")

les = nx.les_miserables_graph()
names = sorted(les.nodes())
idx = {v: i for i, v in enumerate(names)}
write_col(
    "jean",
    len(names) + 3,
    [(idx[u], idx[v]) for u, v in les.edges()],
    "Les Miserables co-appearance graph; vertices 78-80 are isolated",
)
