"""Label random graphs with networkx.check_planarity for the planarity tests.

One graph per line: `<planar 0|1> <n> <u>-<v> <u>-<v> ...`.
"""
import random
import sys

import networkx as nx

rng = random.Random(20240611)
out = []
for _ in range(400):
    n = rng.randint(5, 40)
    m = rng.randint(n, min(3 * n, n * (n - 1) // 2))
    g = nx.gnm_random_graph(n, m, seed=rng.randrange(1 << 30))
    if rng.random() < 0.3:
        # grow a planar graph edge by edge, then sometimes add one more edge
        g = nx.Graph()
        g.add_nodes_from(range(n))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        for u, v in pairs:
            g.add_edge(u, v)
            if not nx.check_planarity(g)[0]:
                g.remove_edge(u, v)
        if rng.random() < 0.5:
            non = [(u, v) for u, v in pairs if not g.has_edge(u, v)]
            if non:
                g.add_edge(*rng.choice(non))
    planar = nx.check_planarity(g)[0]
    edges = " ".join(f"{u}-{v}" for u, v in g.edges())
    out.append(f"{int(planar)} {n} {edges}")
pathlib = __import__("pathlib")
pathlib.Path(sys.argv[1]).write_text("\n".join(out) + "\n")
print(sum(l[0] == "1" for l in out), "planar of", len(out))
