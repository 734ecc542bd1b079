"""Slow, definition-level reimplementations used to cross-check the library.

Nothing here imports the library's internals beyond the plain value types,
so each oracle is an independent reading of the definitions.
"""

from itertools import combinations

import networkx as nx


def ws_quadruple(I, J, m):
    """Weak separation straight from the definition: no a < b < c < d
    (cyclically) with a, c in I - J and b, d in J - I."""
    A, B = set(I) - set(J), set(J) - set(I)
    for quad in combinations(range(1, m + 1), 4):
        for r in range(4):
            a, b, c, d = quad[r:] + quad[:r]
            if a in A and c in A and b in B and d in B:
                return False
    return True


def rotated_key(a, m):
    return lambda x: (x - a) % m


def gale_oracle(a, I, J, m):
    key = rotated_key(a, m)
    return all(key(x) <= key(y) for x, y in zip(sorted(I, key=key), sorted(J, key=key)))


def bar_oracle(I, n):
    return {x for x in range(1, 2 * n + 1) if (2 * n + 1 - x) not in I}


def necklace_oracle(image, white):
    """I_1 from the cyclic-order formula, then I_{i+1} = I_i - {i} + {f(i)}."""
    m = len(image)
    inv = {image[i - 1]: i for i in range(1, m + 1)}
    first = {i for i in range(1, m + 1) if (inv[i] != i and i < inv[i]) or (inv[i] == i and i in white)}
    out = [first]
    for i in range(1, m):
        cur = set(out[-1])
        if image[i - 1] != i:
            cur.discard(i)
            cur.add(image[i - 1])
        out.append(cur)
    return out


def positroid_oracle(necklace, m, k):
    return [set(J) for J in combinations(range(1, m + 1), k)
            if all(gale_oracle(a, necklace[a - 1], J, m) for a in range(1, m + 1))]


def maximal_ws_oracle(members, necklace, m):
    """Maximal pairwise weakly separated families between the necklace and
    the positroid, as networkx cliques of the members compatible with
    every necklace entry."""
    G = nx.Graph()
    nodes = [frozenset(J) for J in members if all(ws_quadruple(J, e, m) for e in necklace)]
    G.add_nodes_from(nodes)
    for X, Y in combinations(nodes, 2):
        if ws_quadruple(X, Y, m):
            G.add_edge(X, Y)
    return {frozenset(c) for c in nx.find_cliques(G)}


def cliques_oracle(labels, m, k):
    """White cliques keyed by (k-1)-sets, black cliques by (k+1)-sets, size >= 3."""
    labels = [frozenset(I) for I in labels]
    white, black = {}, {}
    for K in combinations(range(1, m + 1), k - 1):
        group = [I for I in labels if set(K) < I]
        if len(group) >= 3:
            white[frozenset(K)] = set(group)
    for L in combinations(range(1, m + 1), k + 1):
        group = [I for I in labels if I < set(L)]
        if len(group) >= 3:
            black[frozenset(L)] = set(group)
    return white, black
