"""Simple undirected graphs: girth, named families, inflation, distance-3.

Deficiency graphs of pentagonal geometries are what these functions exist
for, but nothing here knows about geometries.  Graphs are immutable; girth
returns None for acyclic graphs rather than a sentinel number.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable

from .errors import ParameterDomain, PentSyntaxError, PointOutOfRange, StepNotDividingV


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def neighbours(self, x: int) -> tuple[int, ...]:
        return self.adjacency[x]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise ParameterDomain(f"n = {n} < 0")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParameterDomain(f"edge ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise ParameterDomain(f"loop at {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n=n, adjacency=tuple(tuple(sorted(a)) for a in adj))


@dataclass(frozen=True)
class GraphReport:
    """Degree/girth/connectivity summary.  regular_degree is None when the
    graph is irregular; girth is None when it is acyclic."""

    n: int
    regular_degree: int | None
    girth: int | None
    connected: bool
    component_sizes: tuple[int, ...]


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, by BFS from every vertex.

    A BFS from s may overestimate the shortest cycle through s, but the
    minimum over all start vertices is exact.
    """
    best: int | None = None
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for x in g.adjacency[u]:
                if dist[x] == -1:
                    dist[x] = dist[u] + 1
                    parent[x] = u
                    queue.append(x)
                elif x != parent[u]:
                    cycle = dist[u] + dist[x] + 1
                    if best is None or cycle < best:
                        best = cycle
    return best


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for x in g.adjacency[u]:
                if not seen[x]:
                    seen[x] = True
                    comp.append(x)
                    queue.append(x)
        out.append(sorted(comp))
    return out


def report(g: Graph) -> GraphReport:
    degrees = {len(a) for a in g.adjacency}
    comps = components(g)
    return GraphReport(
        n=g.n,
        regular_degree=degrees.pop() if len(degrees) == 1 else None,
        girth=girth(g),
        connected=len(comps) <= 1,
        component_sizes=tuple(sorted(len(c) for c in comps)),
    )


def generalized_petersen(n: int) -> Graph:
    """GP(n,2): outer n-cycle, spokes, inner vertices joined at step 2."""
    if n < 5:
        raise ParameterDomain(f"n = {n} < 5")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + 2) % n))
    return graph_from_edges(2 * n, edges)


def petersen() -> Graph:
    return generalized_petersen(5)


def hoffman_singleton() -> Graph:
    """The unique (7,5)-cage on 50 vertices.

    Five pentagons P_h and five pentagrams Q_i; vertex j of P_h is joined to
    vertex (h*i + j) mod 5 of Q_i.  Pentagon vertices are numbered 5h+j,
    pentagram vertices 25+5i+j.
    """
    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((5 * h + j, 5 * h + (j + 1) % 5))
            edges.append((25 + 5 * h + j, 25 + 5 * h + (j + 2) % 5))
    for h in range(5):
        for i in range(5):
            for j in range(5):
                edges.append((5 * h + j, 25 + 5 * i + (h * i + j) % 5))
    return graph_from_edges(50, edges)


def orbit_graph(base_edges: Iterable[tuple[int, int]], step: int, modulus: int) -> Graph:
    """Close base edges under x -> x+step (mod modulus)."""
    if modulus < 1:
        raise ParameterDomain(f"modulus = {modulus} < 1")
    if step < 1 or modulus % step != 0:
        raise StepNotDividingV(f"step = {step} does not divide modulus = {modulus}")
    edges: set[tuple[int, int]] = set()
    for u, v in base_edges:
        if not (0 <= u < modulus and 0 <= v < modulus):
            raise PointOutOfRange(f"edge ({u},{v}) outside 0..{modulus - 1}")
        if u == v:
            raise ParameterDomain(f"loop at {u}")
        a, b = u, v
        while True:
            edges.add((a, b) if a < b else (b, a))
            a, b = (a + step) % modulus, (b + step) % modulus
            if {a, b} == {u, v}:
                break
    return graph_from_edges(modulus, edges)


def inflate(g: Graph, h: int) -> Graph:
    """Replace each vertex p by h copies hp..hp+h-1 and each edge by K_{h,h}.

    inflate(g, 1) returns g itself.  For h >= 2 any edge yields a 4-cycle, so
    the result has girth 4.
    """
    if h < 1:
        raise ParameterDomain(f"h = {h} < 1")
    edges = []
    for u, v in g.edges():
        for s in range(h):
            for t in range(h):
                edges.append((h * u + s, h * v + t))
    return graph_from_edges(h * g.n, edges)


def shift_automorphisms(g: Graph) -> tuple[int, ...]:
    """Shifts s for which x -> x + s (mod n) preserves adjacency.

    Graphs developed from base edges by a step admit their step; most other
    vertex numberings admit none.
    """
    edges = {frozenset(e) for e in g.edges()}
    found = []
    for s in range(1, g.n):
        if all(frozenset(((a + s) % g.n, (b + s) % g.n)) in edges for a, b in g.edges()):
            found.append(s)
    return tuple(found)


def distance3_graph(g: Graph) -> Graph:
    """Join x and y when their distance in g is at least 3.

    Vertices in different components are at infinite distance, hence joined.
    """
    edges = []
    for x in range(g.n):
        ball = set(g.adjacency[x])
        ball.add(x)
        for u in g.adjacency[x]:
            ball.update(g.adjacency[u])
        edges.extend((x, y) for y in range(x + 1, g.n) if y not in ball)
    return graph_from_edges(g.n, edges)


def neighborhood_intersection_profile(g: Graph) -> Counter:
    """Multiset of |N(x) & N(y)| over unordered vertex pairs."""
    sets = [set(a) for a in g.adjacency]
    profile: Counter = Counter()
    for x in range(g.n):
        for y in range(x + 1, g.n):
            profile[len(sets[x] & sets[y])] += 1
    return profile


def parse_graph_file(text: str) -> Graph:
    """Text format: first data line is the vertex count, then one 'u v' edge
    per line.  '#' comments and blank lines are ignored."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            values = [int(tok) for tok in stripped.split()]
        except ValueError:
            raise PentSyntaxError(f"non-integer token in {stripped!r}", line_no)
        if n is None:
            if len(values) != 1:
                raise PentSyntaxError("first data line must be the vertex count", line_no)
            n = values[0]
        elif len(values) == 2:
            edges.append((values[0], values[1]))
        else:
            raise PentSyntaxError("edge lines must be 'u v'", line_no)
    if n is None:
        raise PentSyntaxError("empty graph file")
    return graph_from_edges(n, edges)


def write_graph_file(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend("%d %d" % (u, v) for u, v in g.edges())
    return "\n".join(lines) + "\n"
