"""Ordered graphs, layerings and geodesic machinery.

An ordered graph is a finite simple graph whose vertices are integers;
the vertex order is the numeric order.  Vertex ids need not be dense:
induced subgraphs keep the original ids so that transcripts and
solutions can always be traced back to the input.
"""

from collections import deque
from dataclasses import dataclass


class GraphError(ValueError):
    pass


class NotALayeringError(GraphError):
    pass


class NotGeodesicError(GraphError):
    """Raised with a violating vertex pair attached."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class PartitionError(GraphError):
    pass


class OrderedGraph:
    """Immutable simple graph on integer vertices, ordered numerically."""

    __slots__ = ("vertices", "adj", "annotations", "_vset", "_m")

    def __init__(self, vertices, edges=(), annotations=None, _adj=None):
        vs = tuple(sorted(set(vertices)))
        self.vertices = vs
        self._vset = frozenset(vs)
        if _adj is not None:
            self.adj = _adj
        else:
            nbrs = {v: set() for v in vs}
            for u, v in edges:
                if u == v:
                    raise GraphError("loop at vertex %d" % u)
                if u not in nbrs or v not in nbrs:
                    raise GraphError("edge (%d,%d) uses unknown vertex" % (u, v))
                nbrs[u].add(v)
                nbrs[v].add(u)
            self.adj = {v: frozenset(nbrs[v]) for v in vs}
        self._m = sum(len(a) for a in self.adj.values()) // 2
        anns = {}
        for name, vset in (annotations or {}).items():
            vset = frozenset(vset)
            if not vset <= self._vset:
                raise GraphError("annotation %r contains unknown vertices" % name)
            anns[name] = vset
        self.annotations = anns

    # immutable: forking strategies should not duplicate graphs
    def __deepcopy__(self, memo):
        return self

    @property
    def n(self):
        return len(self.vertices)

    @property
    def m(self):
        return self._m

    @property
    def vertex_set(self):
        return self._vset

    def neighbors(self, v):
        return self.adj[v]

    def has_edge(self, u, v):
        return v in self.adj.get(u, ())

    def smallest(self):
        if not self.vertices:
            raise GraphError("empty graph has no smallest vertex")
        return self.vertices[0]

    def edge_list(self):
        return sorted((u, v) for u in self.vertices for v in self.adj[u] if u < v)

    def induced(self, vs):
        keep = self._vset & frozenset(vs)
        adj = {v: self.adj[v] & keep for v in sorted(keep)}
        anns = {name: s & keep for name, s in self.annotations.items()}
        g = OrderedGraph(keep, _adj=adj)
        g.annotations.update(anns)
        return g

    def delete_smallest(self):
        return self.induced(self._vset - {self.smallest()})

    def with_annotations(self, annotations):
        g = OrderedGraph(self.vertices, _adj=self.adj)
        for name, s in annotations.items():
            s = frozenset(s)
            if not s <= self._vset:
                raise GraphError("annotation %r contains unknown vertices" % name)
            g.annotations[name] = s
        return g

    def bfs_distances(self, source):
        if source not in self._vset:
            raise GraphError("unknown source vertex %d" % source)
        dist = {source: 0}
        q = deque([source])
        while q:
            u = q.popleft()
            du = dist[u]
            for w in self.adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    q.append(w)
        return dist

    def components(self):
        """Connected components as frozensets, ordered by smallest member."""
        seen = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = set(self.bfs_distances(v))
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self):
        return self.n <= 1 or len(self.bfs_distances(self.smallest())) == self.n

    def relabel_compact(self):
        """Return (graph on 0..n-1, mapping old id -> new id)."""
        perm = {v: i for i, v in enumerate(self.vertices)}
        adj = {perm[v]: frozenset(perm[w] for w in self.adj[v]) for v in self.vertices}
        g = OrderedGraph(range(self.n), _adj=adj)
        g.annotations.update(
            {name: frozenset(perm[v] for v in s) for name, s in self.annotations.items()}
        )
        return g, perm

    def __eq__(self, other):
        if not isinstance(other, OrderedGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.adj == other.adj
            and self.annotations == other.annotations
        )

    def __hash__(self):
        return hash((self.vertices, frozenset(self.edge_list())))

    def __repr__(self):
        return "OrderedGraph(n=%d, m=%d)" % (self.n, self.m)


def is_valid_layering(graph, lam):
    """True iff lam labels every vertex and edge labels differ by at most 1."""
    if set(lam) < graph.vertex_set or graph.vertex_set - set(lam):
        return False
    for u, v in graph.edge_list():
        if abs(lam[u] - lam[v]) > 1:
            return False
    return True


def require_layering(graph, lam, what="layering"):
    missing = graph.vertex_set - set(lam)
    if missing:
        raise NotALayeringError("%s misses vertex %d" % (what, min(missing)))
    for u, v in graph.edge_list():
        if abs(lam[u] - lam[v]) > 1:
            raise NotALayeringError(
                "%s gap %d on edge (%d,%d)" % (what, abs(lam[u] - lam[v]), u, v)
            )


def layering_width(lam):
    if not lam:
        return 0
    counts = {}
    for lab in lam.values():
        counts[lab] = counts.get(lab, 0) + 1
    return max(counts.values())


def bfs_layering(graph, source):
    """Distance-from-source layering; the graph must be connected."""
    dist = graph.bfs_distances(source)
    if len(dist) != graph.n:
        far = min(graph.vertex_set - set(dist))
        raise GraphError(
            "graph disconnected: no path between %d and %d" % (source, far)
        )
    return dist


def spread_componentwise_layering(graph, r):
    """Label all of component i (0-based, by smallest vertex) with r*(i+1).

    Spacing r means a window of r consecutive labels meets at most one
    component, so any reply to a Restrict with this layering keeps a
    single (connected) piece.
    """
    if r < 1:
        raise GraphError("spread must be positive, got %r" % (r,))
    lam = {}
    for i, comp in enumerate(graph.components()):
        for v in comp:
            lam[v] = r * (i + 1)
    return lam


def is_geodesic(graph, part, lam, return_witness=False):
    """Check d_G(x, y) >= |lam(x) - lam(y)| for all x, y in part.

    lam must be a valid layering of graph[part]; unreachable pairs are
    unconstrained.
    """
    part = frozenset(part)
    require_layering(graph.induced(part), {v: lam[v] for v in part}, "partial layering")
    for x in sorted(part):
        dist = graph.bfs_distances(x)
        for y in sorted(part):
            d = dist.get(y)
            if d is not None and d < abs(lam[x] - lam[y]):
                if return_witness:
                    return False, (x, y)
                return False
    if return_witness:
        return True, None
    return True


def extend_geodesic_layering(graph, part, lam):
    """Extend a geodesic partial layering on part to all of graph.

    Each vertex gets max over x in part of lam[x] - d(x, v); vertices
    unreachable from part get label 0.  The result is a valid layering
    of the whole graph agreeing with lam on part.
    """
    part = frozenset(part)
    ok, pair = is_geodesic(graph, part, lam, return_witness=True)
    if not ok:
        x, y = pair
        raise NotGeodesicError(
            "labels %d,%d of %d,%d exceed their distance" % (lam[x], lam[y], x, y),
            pair=pair,
        )
    best = {}
    for x in sorted(part):
        lx = lam[x]
        for v, d in graph.bfs_distances(x).items():
            cand = lx - d
            if v not in best or cand > best[v]:
                best[v] = cand
    ext = {v: best.get(v, 0) for v in graph.vertices}
    require_layering(graph, ext, "extended layering")
    for v in part:
        assert ext[v] == lam[v]
    return ext


@dataclass(frozen=True)
class GeodesicPartition:
    """Ordered partition with a stored layering per part and the quotient."""

    parts: tuple  # tuple of frozensets, respecting the vertex order
    part_layerings: tuple  # tuple of dicts, one per part
    quotient_graph: "OrderedGraph"


def quotient(graph, parts):
    """Contract each part to one vertex; parts must respect the order."""
    prev_max = None
    seen = set()
    for p in parts:
        p = frozenset(p)
        if not p:
            raise PartitionError("empty part")
        if p & seen:
            raise PartitionError("parts overlap")
        if prev_max is not None and min(p) < prev_max:
            raise PartitionError("parts do not respect the vertex order")
        prev_max = max(p)
        seen |= p
    if seen != graph.vertex_set:
        raise PartitionError("parts do not cover the vertex set")
    where = {}
    for i, p in enumerate(parts):
        for v in p:
            where[v] = i
    edges = set()
    for u, v in graph.edge_list():
        a, b = where[u], where[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return OrderedGraph(range(len(parts)), edges)


def check_chordal_ordering(graph):
    """Return (is_chordal, max_left_degree).

    Chordal here means: for every vertex, its smaller neighbors form a
    clique.  max_left_degree is reported either way.
    """
    ok = True
    max_ld = 0
    for v in graph.vertices:
        left = sorted(w for w in graph.adj[v] if w < v)
        max_ld = max(max_ld, len(left))
        for i, a in enumerate(left):
            for b in left[i + 1 :]:
                if not graph.has_edge(a, b):
                    ok = False
    return ok, max_ld


def geodesic_partition_violation(graph, gp, d):
    """None if gp is a width-d geodesic partition of graph, else a reason."""
    try:
        q = quotient(graph, gp.parts)
    except PartitionError as exc:
        return str(exc)
    if q != gp.quotient_graph:
        return "stored quotient differs from quotient of the parts"
    if len(gp.part_layerings) != len(gp.parts):
        return "layering count differs from part count"
    suffix = set(graph.vertex_set)
    for i, part in enumerate(gp.parts):
        lam = gp.part_layerings[i]
        if set(lam) != set(part):
            return "layering %d does not cover part %d" % (i, i)
        if layering_width({v: lam[v] for v in part}) > d:
            return "part %d has layering width above %d" % (i, d)
        sub = graph.induced(suffix)
        try:
            ok, pair = is_geodesic(sub, part, lam, return_witness=True)
        except NotALayeringError as exc:
            return "part %d: %s" % (i, exc)
        if not ok:
            return "part %d layering not geodesic in the suffix graph at %s" % (
                i,
                pair,
            )
        suffix -= set(part)
    return None


def check_geodesic_partition(graph, gp, d):
    return geodesic_partition_violation(graph, gp, d) is None


@dataclass(frozen=True)
class Embedding:
    """Map into R^dim under the max metric: distinct vertices at least 1
    apart, endpoints of edges at most beta apart."""

    dim: int
    beta: float
    coords: dict  # vertex -> tuple of floats

    def __deepcopy__(self, memo):
        return self

    def coordinate_layering(self, graph, axis):
        import math

        lam = {}
        for v in graph.vertices:
            lam[v] = math.floor(self.coords[v][axis] / self.beta)
        return lam


def validate_embedding(graph, emb):
    if emb.dim < 1:
        raise GraphError("embedding dimension must be positive")
    if emb.beta <= 0:
        raise GraphError("embedding beta must be positive")
    for v in graph.vertices:
        if v not in emb.coords or len(emb.coords[v]) != emb.dim:
            raise GraphError("embedding misses vertex %d" % v)
    vs = graph.vertices
    for i, u in enumerate(vs):
        cu = emb.coords[u]
        for v in vs[i + 1 :]:
            cv = emb.coords[v]
            d = max(abs(a - b) for a, b in zip(cu, cv))
            if d < 1 - 1e-9:
                raise GraphError("vertices %d,%d closer than 1 (%.4f)" % (u, v, d))
    for u, v in graph.edge_list():
        cu, cv = emb.coords[u], emb.coords[v]
        d = max(abs(a - b) for a, b in zip(cu, cv))
        if d > emb.beta + 1e-9:
            raise GraphError(
                "edge (%d,%d) stretched to %.4f > beta=%.4f" % (u, v, d, emb.beta)
            )
    return True
