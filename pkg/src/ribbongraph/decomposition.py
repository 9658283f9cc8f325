"""Sums, joins and separability structure of ribbon graphs.

An edge subset splits a connected graph into the induced subgraph on the
subset and its complementary induced subgraph.  When every pair of their
components meets in at most one vertex, and the component-incidence graph
is a tree, the subset carries a certificate that the graph is assembled by
vertex-gluing components alternately from the two sides; the partial dual's
genus is then the sum of the two sides' genera.  This module detects those
certificates, classifies them by the topology of the components, factors
graphs into prime join summands and relates certificate subsets by toggling
summands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import (
    End,
    InvalidGraph,
    RibbonGraph,
    RibbonGraphError,
    induced_subgraph,
)
from .topology import (
    connected_components,
    is_connected,
    surface_stats,
)


class NotAJoinSummand(RibbonGraphError):
    """The given edge set is not a join summand of the graph."""


# -- sums and joins as constructors -------------------------------------------


def _merge_rotation(rot_p: Sequence[End], rot_q: Sequence[End], pattern: str, q_offset: int):
    """Interleave two rotations according to a P/Q pattern word."""
    pattern = pattern.upper().replace(" ", "")
    if sorted(pattern) != sorted("P" * len(rot_p) + "Q" * len(rot_q)):
        raise InvalidGraph(
            f"pattern {pattern!r} must use {len(rot_p)} P symbols and {len(rot_q)} Q symbols"
        )
    qs = list(rot_q[q_offset % len(rot_q) :]) + list(rot_q[: q_offset % len(rot_q)]) if rot_q else []
    ps = list(rot_p)
    out = []
    for ch in pattern:
        out.append(ps.pop(0) if ch == "P" else qs.pop(0))
    return tuple(out)


def all_interleave_patterns(deg_p: int, deg_q: int):
    """Every distinct way to shuffle a degree-``deg_q`` rotation into a
    degree-``deg_p`` one: pattern words starting with P, times a rotational
    offset for the Q side."""
    if deg_p == 0 or deg_q == 0:
        yield "P" * deg_p + "Q" * deg_q, 0
        return
    for rest in itertools.combinations(range(deg_p + deg_q - 1), deg_q):
        word = "P" + "".join("Q" if i in rest else "P" for i in range(deg_p + deg_q - 1))
        for off in range(deg_q):
            yield word, off


def n_sum(
    p: RibbonGraph,
    q: RibbonGraph,
    pairing: Sequence[tuple[str, str, str] | tuple[str, str, str, int]],
) -> RibbonGraph:
    """Glue ``p`` and ``q`` by identifying ``n`` vertex pairs.

    Each pairing entry is ``(vertex of p, vertex of q, pattern[, q_offset])``
    where the pattern word spells how the second rotation interleaves into
    the first at the merged vertex.  The two inputs must be connected,
    non-trivial and edge-disjoint; the result contains both as subgraphs
    meeting exactly in the merged vertices.
    """
    if not pairing:
        raise InvalidGraph("an n-sum needs at least one merged vertex pair")
    if p.n_edges == 0 or q.n_edges == 0:
        raise InvalidGraph("summands must be non-trivial (at least one edge)")
    if not is_connected(p) or not is_connected(q):
        raise InvalidGraph("summands must be connected")
    if set(p.edge_labels) & set(q.edge_labels):
        clash = sorted(set(p.edge_labels) & set(q.edge_labels))
        raise InvalidGraph(f"edge labels shared between summands: {clash}")
    vp_seen: set[str] = set()
    vq_seen: set[str] = set()
    merged: dict[str, tuple] = {}
    for entry in pairing:
        vp, vq, pattern = entry[0], entry[1], entry[2]
        off = entry[3] if len(entry) > 3 else 0
        if vp in vp_seen or vq in vq_seen:
            raise InvalidGraph(f"vertex reused within the pairing: {vp!r}/{vq!r}")
        vp_seen.add(vp)
        vq_seen.add(vq)
        merged[vp] = (vq, pattern, off)
    q_names = {n for n in q.vertex_names}
    rename_q = {
        n: (f"q.{n}" if n in set(p.vertex_names) else n)
        for n in q_names
        if n not in vq_seen
    }
    vertices = []
    for name in p.vertex_names:
        if name in merged:
            vq, pattern, off = merged[name]
            rot = _merge_rotation(p.rotation(name), q.rotation(vq), pattern, off)
            vertices.append((name, rot))
        else:
            vertices.append((name, p.rotation(name)))
    for name in q.vertex_names:
        if name in vq_seen:
            continue
        vertices.append((rename_q[name], q.rotation(name)))
    signs = dict(p.signs)
    signs.update(q.signs)
    return RibbonGraph(vertices, signs)


def join(
    p: RibbonGraph,
    vp: str,
    q: RibbonGraph,
    vq: str,
    gap: int = 0,
    q_offset: int = 0,
) -> RibbonGraph:
    """One-point join: a 1-sum keeping each side's ends on a contiguous arc.

    ``gap`` selects after which rotation slot of ``vp`` the block of ``vq``
    ends is inserted.  Genus adds under joins; this is asserted.
    """
    dp, dq = p.degree(vp), q.degree(vq)
    if dq == 0 or q.n_edges == 0:
        raise InvalidGraph("join summand is trivial")
    gap %= max(1, dp)
    word = "P" * gap + "Q" * dq + "P" * (dp - gap)
    out = n_sum(p, q, [(vp, vq, word, q_offset)])
    got = surface_stats(out).euler_genus
    want = surface_stats(p).euler_genus + surface_stats(q).euler_genus
    assert got == want, f"join must add genus: {got} != {want}"
    return out


# -- biseparations -------------------------------------------------------------


@dataclass(frozen=True)
class SideComponent:
    """One component of an induced side, with its surface data."""

    side: str  # "A" or "B"
    vertices: frozenset
    edges: frozenset
    euler_genus: int
    orientable: bool


@dataclass(frozen=True)
class BiseparationCertificate:
    """Witness that an edge subset splits the graph into two sides whose
    component-incidence graph is a tree."""

    subset: frozenset
    trivial: bool
    components: tuple[SideComponent, ...]
    tree_edges: tuple[tuple[int, int, str], ...]  # (component, component, vertex)
    label: str  # "plane", "rp2" or "other"
    genus_sum: int

    @property
    def classification(self) -> str:
        return f"{self.label} (trivial)" if self.trivial else self.label


def _side_components(g: RibbonGraph, edges: frozenset, side: str):
    out = []
    if edges:
        sub = induced_subgraph(g, edges)
        for vs, es in connected_components(sub):
            st = surface_stats(induced_subgraph(g, es))
            out.append(
                SideComponent(
                    side=side,
                    vertices=vs,
                    edges=es,
                    euler_genus=st.euler_genus,
                    orientable=st.orientable,
                )
            )
    return out


def _classify_components(comps) -> tuple[str, int]:
    genera = sorted((c.euler_genus for c in comps), reverse=True)
    total = sum(genera)
    if total == 0:
        return "plane", 0
    if genera[0] == 1 and total == 1:
        return "rp2", 1
    return "other", total


def biseparation_data(
    g: RibbonGraph, edges: Iterable[str]
) -> tuple[tuple[SideComponent, ...], Optional[BiseparationCertificate]]:
    """Side components of a subset plus the certificate when one exists."""
    if not is_connected(g):
        raise InvalidGraph("biseparations are defined for connected graphs")
    sub = g.check_subset(edges)
    cache = g._cache.setdefault("bisep", {})
    hit = cache.get(sub)
    if hit is not None:
        return hit
    comp_a = _side_components(g, sub, "A")
    comp_b = _side_components(g, g.complement(sub), "B")
    comps = tuple(comp_a + comp_b)
    label, total = _classify_components(comps)
    cert: Optional[BiseparationCertificate]
    if not sub or sub == frozenset(g.edge_labels):
        cert = BiseparationCertificate(
            subset=sub,
            trivial=True,
            components=comps,
            tree_edges=(),
            label=label,
            genus_sum=total,
        )
        cache[sub] = (comps, cert)
        return comps, cert

    where_a = {v: i for i, c in enumerate(comp_a) for v in c.vertices}
    where_b = {v: len(comp_a) + i for i, c in enumerate(comp_b) for v in c.vertices}
    tree_edges = []
    parent = list(range(len(comps)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cert = BiseparationCertificate(
        subset=sub,
        trivial=False,
        components=comps,
        tree_edges=(),
        label=label,
        genus_sum=total,
    )
    for v in g.vertex_names:
        if v in where_a and v in where_b:
            i, j = where_a[v], where_b[v]
            ri, rj = find(i), find(j)
            if ri == rj:
                cert = None  # a cycle or two shared vertices: not a tree
                break
            parent[ri] = rj
            tree_edges.append((i, j, v))
    if cert is not None:
        if len({find(i) for i in range(len(comps))}) != 1:
            cert = None
        else:
            cert = BiseparationCertificate(
                subset=sub,
                trivial=False,
                components=comps,
                tree_edges=tuple(tree_edges),
                label=label,
                genus_sum=total,
            )
    cache[sub] = (comps, cert)
    return comps, cert


def is_biseparation(g: RibbonGraph, edges: Iterable[str]) -> Optional[BiseparationCertificate]:
    """Certificate that the subset splits ``g`` along 1-sums, or ``None``.

    The full and the empty subset always qualify (trivially).  Otherwise a
    vertex shared by a component of each side contributes one incidence
    edge, and the certificate exists exactly when those incidence edges form
    a tree over all the components: connected, acyclic, no two components
    sharing more than one vertex.
    """
    return biseparation_data(g, edges)[1]


@dataclass(frozen=True)
class BiseparationClass:
    exists: bool
    trivial: bool
    label: Optional[str]
    genus_sum: Optional[int]

    def __str__(self) -> str:
        if not self.exists:
            return "none"
        text = self.label if self.label != "other" else f"other({self.genus_sum})"
        return f"{text} (trivial)" if self.trivial else text


def classify_biseparation(g: RibbonGraph, edges: Iterable[str]) -> BiseparationClass:
    """Classify a subset: no certificate, or plane / rp2 / other(k) by the
    genera of the side components (trivial subsets classified by the genus
    of the whole graph, which is what their single side carries)."""
    cert = is_biseparation(g, edges)
    if cert is None:
        return BiseparationClass(False, False, None, None)
    return BiseparationClass(True, cert.trivial, cert.label, cert.genus_sum)


def enumerate_biseparations(
    g: RibbonGraph, label: str = "all"
) -> list[frozenset]:
    """All subsets whose certificate matches the filter (``all``, ``plane``,
    ``rp2``, ``other`` or ``nontrivial``).  Closed under complement."""
    from .duality import subsets_sorted

    out = []
    for sub in subsets_sorted(g.edge_labels):
        cert = is_biseparation(g, sub)
        if cert is None:
            continue
        if label == "all":
            out.append(sub)
        elif label == "nontrivial":
            if not cert.trivial:
                out.append(sub)
        elif cert.label == label:
            out.append(sub)
    return out


# -- joins: detection, prime factorization -------------------------------------


def join_summand_splits(g: RibbonGraph) -> list[tuple[str, frozenset]]:
    """All ways to split ``g`` as a join at a vertex.

    A returned pair ``(v, X)`` means the ends of the ``X`` edges occupy a
    contiguous arc of the rotation at ``v``, every loop at ``v`` stays on
    one side, no component of ``g`` minus ``v`` attaches to both sides, and
    both sides carry at least one edge.  Both ``(v, X)`` and ``(v, X^c)``
    are listed.
    """
    if not is_connected(g):
        raise InvalidGraph("join splits are defined for connected graphs")
    cached = g._cache.get("join_splits")
    if cached is not None:
        return list(cached)
    out = set()
    for v in g.vertex_names:
        rot = g.rotation(v)
        d = len(rot)
        if d < 2:
            continue
        # components of g minus v, to check that none straddles the split
        local = {x.label for x in rot}
        rest = RibbonGraph(
            [(n, tuple(e for e in g.rotation(n) if e.label not in local))
             for n in g.vertex_names if n != v],
            {k: s for k, s in g.signs.items() if k not in local},
            _validate=False,
        )
        rest_comps = connected_components(rest)
        comp_of: dict[str, int] = {}
        for ci, (vs, _) in enumerate(rest_comps):
            for n in vs:
                comp_of[n] = ci
        end_comp: dict[int, int] = {}
        for pos, e in enumerate(rot):
            other = End(e.label, 3 - e.slot)
            if other in rot:
                end_comp[pos] = -1  # loop at v
            else:
                end_comp[pos] = comp_of[g.vertex_of_end(other)]
        for start in range(d):
            for length in range(1, d):
                block = [(start + k) % d for k in range(length)]
                inside = set(block)
                # loops must close inside or outside the block
                ok = True
                for i in block:
                    e = rot[i]
                    other = End(e.label, 3 - e.slot)
                    if other in rot and rot.index(other) not in inside:
                        ok = False
                        break
                if not ok:
                    continue
                comps_in = {end_comp[i] for i in block} - {-1}
                comps_out = {end_comp[i] for i in range(d) if i not in inside} - {-1}
                if comps_in & comps_out:
                    continue
                edges_x = {rot[i].label for i in block}
                for ci in comps_in:
                    edges_x |= rest_comps[ci][1]
                out.add((v, frozenset(edges_x)))
    result = sorted(out, key=lambda t: (t[0], sorted(t[1])))
    g._cache["join_splits"] = tuple(result)
    return result


@dataclass(frozen=True)
class JoinTree:
    """Prime join factorization: factor edge sets and the vertices where
    they are glued together."""

    factors: tuple[frozenset, ...]
    joints: tuple[tuple[str, tuple[int, ...]], ...]  # vertex -> factor indices

    @property
    def n_factors(self) -> int:
        return len(self.factors)


def prime_factorization(g: RibbonGraph) -> JoinTree:
    """Split at join vertices until no split remains.

    The factor edge sets are independent of the split order; the test suite
    asserts this by trying every order on corpus graphs.
    """
    if not is_connected(g):
        raise InvalidGraph("prime factorization is defined for connected graphs")
    cached = g._cache.get("prime")
    if cached is not None:
        return cached
    factors = []
    stack = [frozenset(g.edge_labels)]
    while stack:
        edges = stack.pop()
        if not edges:
            continue
        sub = induced_subgraph(g, edges)
        splits = join_summand_splits(sub)
        if not splits:
            factors.append(edges)
            continue
        v, x = splits[0]
        stack.append(x)
        stack.append(frozenset(edges) - x)
    factors.sort(key=sorted)
    vert_sets = [frozenset(induced_subgraph(g, f).vertex_names) for f in factors]
    joints = []
    for v in g.vertex_names:
        owners = tuple(i for i, vs in enumerate(vert_sets) if v in vs)
        if len(owners) > 1:
            joints.append((v, owners))
    tree = JoinTree(factors=tuple(factors), joints=tuple(joints))
    g._cache["prime"] = tree
    return tree


def summand_edge_sets(g: RibbonGraph) -> list[frozenset]:
    """Edge sets that can appear as a single join summand: the unions of
    prime factors whose union is connected (the whole edge set included)."""
    cached = g._cache.get("summands")
    if cached is not None:
        return list(cached)
    tree = prime_factorization(g)
    k = tree.n_factors
    out = []
    for r in range(1, k + 1):
        for combo in itertools.combinations(range(k), r):
            edges = frozenset().union(*(tree.factors[i] for i in combo))
            if is_connected(induced_subgraph(g, edges)):
                out.append(edges)
    result = sorted(set(out), key=lambda s: (len(s), sorted(s)))
    g._cache["summands"] = tuple(result)
    return result


def is_join_biseparation(g: RibbonGraph, edges: Iterable[str]) -> bool:
    """Whether the subset is a union of join-summand edge sets of ``g``
    (equivalently, of prime factors)."""
    sub = g.check_subset(edges)
    tree = prime_factorization(g)
    rest = set(sub)
    for f in tree.factors:
        if f <= rest:
            rest -= f
        elif f & rest:
            return False
    return not rest


def is_join_biseparation_bruteforce(g: RibbonGraph, edges: Iterable[str]) -> bool:
    """Oracle for :func:`is_join_biseparation` that never uses uniqueness of
    the prime factorization: search over all recursive binary join splits."""
    sub = g.check_subset(edges)
    memo = g._cache.setdefault("jb_memo", {})
    parts = g._cache.setdefault("jb_parts", {})

    def search(edge_set: frozenset, a: frozenset) -> bool:
        if not a or a == edge_set:
            return True
        key = (edge_set, a)
        hit = memo.get(key)
        if hit is not None:
            return hit
        part = parts.get(edge_set)
        if part is None:
            part = induced_subgraph(g, edge_set)
            parts[edge_set] = part
        result = False
        for v, x in join_summand_splits(part):
            if search(x, a & x) and search(edge_set - x, a - x):
                result = True
                break
        memo[key] = result
        return result

    return search(frozenset(g.edge_labels), sub)


def factor_genera(g: RibbonGraph) -> tuple[int, ...]:
    """Euler genus of every prime factor, in factor order."""
    cached = g._cache.get("factor_genera")
    if cached is None:
        tree = prime_factorization(g)
        cached = tuple(
            surface_stats(induced_subgraph(g, f)).euler_genus for f in tree.factors
        )
        g._cache["factor_genera"] = cached
    return cached


def classify_join_biseparation(g: RibbonGraph, edges: Iterable[str]) -> str:
    """``none``, ``plane-join``, ``rp2-join`` or ``other-join``: the subset
    must be a union of prime factors, and the label reflects the factor
    genera (all plane; exactly one crosscap; anything else)."""
    if not is_join_biseparation(g, edges):
        return "none"
    genera = factor_genera(g)
    total = sum(genera)
    if total == 0:
        return "plane-join"
    if total == 1:
        return "rp2-join"
    return "other-join"


# -- toggling -------------------------------------------------------------------


def toggle_join_summand(
    g: RibbonGraph, edges: Iterable[str], factor: Iterable[str]
) -> frozenset:
    """Replace the subset by its symmetric difference with a join-summand
    edge set."""
    sub = g.check_subset(edges)
    fac = g.check_subset(factor)
    if fac not in set(summand_edge_sets(g)):
        raise NotAJoinSummand(f"{sorted(fac)} is not a join summand edge set")
    return sub ^ fac


def toggles_related(
    g: RibbonGraph, a: Iterable[str], b: Iterable[str]
) -> Optional[list[frozenset]]:
    """Shortest sequence of summand toggles taking one subset to the other,
    or ``None``.  Breadth-first over subsets; an empty list means equality."""
    from collections import deque

    start = g.check_subset(a)
    goal = g.check_subset(b)
    if start == goal:
        return []
    moves = summand_edge_sets(g)
    prev: dict[frozenset, tuple[Optional[frozenset], Optional[frozenset]]] = {
        start: (None, None)
    }
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for m in moves:
            nxt = cur ^ m
            if nxt in prev:
                continue
            prev[nxt] = (cur, m)
            if nxt == goal:
                seq = []
                at = nxt
                while prev[at][0] is not None:
                    seq.append(prev[at][1])
                    at = prev[at][0]
                return list(reversed(seq))
            queue.append(nxt)
    return None
