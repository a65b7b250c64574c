"""Diagonal bases of the A_{r-1} arrangement built from ordered spanning trees.

An ordered basis is an ordered list of r-1 roots whose edges form a
spanning tree on {1..r}.  Its flag of subspaces
span(b_{r-1}) < span(b_{r-2}, b_{r-1}) < ... < V* is recorded
combinatorially as the sequence of set partitions cut out by the last j
edges, j = 0..r-1, ignoring edge orientation.
"""

from itertools import combinations, permutations
from math import factorial

from .weight_space import OrderedBasis, Partition, Root

__all__ = [
    "partition_sequence",
    "dashv",
    "is_diagonal",
    "hamiltonian_basis",
    "nbc_basis",
    "parse_root_order",
    "link_first_order",
    "restrict_to_wall",
    "compose_wall_basis",
    "permute_basis_set",
    "bases_to_json",
    "bases_from_json",
]


def _partition_after(edges, r):
    parent = list(range(r + 1))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in edges:
        a, b = find(e.i), find(e.j)
        if a != b:
            parent[a] = b
    blocks = {}
    for v in range(1, r + 1):
        blocks.setdefault(find(v), []).append(v)
    return frozenset(frozenset(b) for b in blocks.values())


def partition_sequence(basis):
    """The r nested partitions cut out by the last 0, 1, ..., r-1 edges.

    Level j is the partition into connected components of the subgraph
    formed by the final j edges, so two bases share a sequence exactly when
    their flags of spans coincide.
    """
    r = basis.r
    n = len(basis)
    return tuple(_partition_after(basis[n - j:], r) for j in range(r))


def dashv(b, c):
    """True iff no reordering of b has the same partition sequence as c."""
    if b.r != c.r:
        raise ValueError("bases of different rank")
    target = partition_sequence(c)
    # cheap necessary condition: a reordering keeps the edge set
    if frozenset(x.edge() for x in b) != frozenset(x.edge() for x in c):
        return True
    for tau in permutations(range(len(b))):
        if partition_sequence(OrderedBasis([b[t] for t in tau], b.r)) == target:
            return False
    return True


def is_diagonal(bases):
    bases = list(bases)
    if not bases:
        return False
    r = bases[0].r
    if len(bases) != factorial(r - 1):
        return False
    for b, c in combinations(bases, 2):
        if not (dashv(b, c) and dashv(c, b)):
            return False
    return True


def hamiltonian_basis(m, r):
    """Reversed Hamiltonian paths starting at vertex m."""
    if not 1 <= m <= r:
        raise ValueError("m must lie in 1..r")
    rest = [i for i in range(1, r + 1) if i != m]
    out = []
    for tail in permutations(rest):
        path = (m,) + tail
        roots = [Root(path[i - 1], path[i]) for i in range(r - 1, 0, -1)]
        out.append(OrderedBasis(roots, r))
    return out


def parse_root_order(order, r):
    """Parse '13,14,23,...' or a list of pairs into a list of (i, j), i < j."""
    if isinstance(order, str):
        items = []
        for tok in order.split(","):
            tok = tok.strip()
            if ":" in tok or "-" in tok:
                a, b = tok.replace(":", "-").split("-")
            elif len(tok) == 2:
                a, b = tok[0], tok[1]
            else:
                raise ValueError("cannot parse root %r" % tok)
            items.append((int(a), int(b)))
    else:
        items = [tuple(int(x) for x in p) for p in order]
    items = [tuple(sorted(p)) for p in items]
    expected = set(combinations(range(1, r + 1), 2))
    if len(items) != len(expected) or set(items) != expected:
        raise ValueError("ordering must list every pair i<j exactly once")
    return items


def _rank(edges, r):
    return r - len(_partition_after([Root(*e) for e in edges], r))


def nbc_basis(order, r):
    """Ascending no-broken-circuit bases for a total order on the roots.

    Each root is taken with orientation i < j.  A tuple (b_1 < ... < b_{r-1})
    qualifies if for every m, no root below b_m lies in the span of
    b_m, ..., b_{r-1}.
    """
    order = parse_root_order(order, r)
    pos = {e: n for n, e in enumerate(order)}
    out = []
    for combo in combinations(order, r - 1):
        if _rank(combo, r) != r - 1:
            continue
        ok = True
        for m in range(r - 1):
            tail = list(combo[m:])
            base_rank = len(tail)
            for alpha in order[: pos[combo[m]]]:
                if _rank(tail + [alpha], r) == base_rank:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(OrderedBasis([Root(*e) for e in combo], r))
    return out


def link_first_order(partition):
    """A root order for the partition starting with the link edge.

    Order: the link (max(prime), r), other crossing edges, edges inside the
    first block, edges inside the second block; lexicographic within groups.
    """
    r = partition.r
    p1 = set(partition.prime)
    link = (max(p1), r)
    pairs = list(combinations(range(1, r + 1), 2))
    crossing = [e for e in pairs if (e[0] in p1) != (e[1] in p1) and e != link]
    inside1 = [e for e in pairs if e[0] in p1 and e[1] in p1]
    inside2 = [e for e in pairs if e[0] not in p1 and e[1] not in p1]
    return [link] + crossing + inside1 + inside2


def restrict_to_wall(bases, partition):
    """Members with exactly one edge crossing the partition, with that edge."""
    out = []
    for b in bases:
        crossing = [x for x in b if partition.separates(x)]
        if len(crossing) == 1:
            out.append((b, crossing[0]))
    return out


def compose_wall_basis(link, dp, dpp):
    """Concatenations (link, B', B'') for B' in dp and B'' in dpp.

    ``dp`` and ``dpp`` are lists of root tuples on the two blocks (the empty
    tuple stands for the single basis of a one-element block).
    """
    out = []
    dp = list(dp) or [()]
    dpp = list(dpp) or [()]
    for b1 in dp:
        for b2 in dpp:
            out.append(OrderedBasis((link,) + tuple(b1) + tuple(b2)))
    return out


def block_nbc_basis(block, order):
    """nbc basis of the arrangement on an index block, for the induced order."""
    block = sorted(block)
    if len(block) == 1:
        return [()]
    local = {v: n + 1 for n, v in enumerate(block)}
    back = {n + 1: v for n, v in enumerate(block)}
    induced = [(local[a], local[b]) for a, b in order if a in local and b in local]
    out = []
    for b in nbc_basis(induced, len(block)):
        out.append(tuple(Root(back[x.i], back[x.j]) for x in b))
    return out


def permute_basis_set(sigma, bases):
    return [b.permuted(sigma) for b in bases]


def bases_to_json(bases):
    return [b.to_json() for b in bases]


def bases_from_json(data, r=None):
    return [OrderedBasis([Root(*p) for p in item], r) for item in data]


def wall_partitions(r):
    """All partitions (prime, double_prime) with r in the second block."""
    out = []
    for size in range(1, r):
        for s in combinations(range(1, r), size):
            out.append(Partition.from_prime(s, r))
    return out
