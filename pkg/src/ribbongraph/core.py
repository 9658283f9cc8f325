"""Ribbon graphs as signed rotation systems.

A ribbon graph is a surface with boundary assembled from vertex discs and
edge bands.  We store it combinatorially: every vertex carries a cyclic
sequence of edge ends (its rotation, always read in a fixed chirality) and
every edge carries a twist sign, ``+1`` for an untwisted band and ``-1``
for a band with a half twist.

Conventions, fixed here once and validated by the calibration fixtures in
the test suite:

* The two ends of edge ``e`` are written ``e.1`` and ``e.2``.  A loop has
  both ends on one vertex, but they remain two distinct ends.
* The boundary circle of the band of ``e`` traverses the attachment arc of
  ``e.1`` in rotation direction, and the arc of ``e.2`` in rotation
  direction when the sign is ``+1`` and against it when the sign is ``-1``.
  Consequently an arrow presentation shows equal relative arrow directions
  for an untwisted edge and opposite directions for a twisted edge.
* Flipping a vertex reverses its rotation and toggles the sign of every
  non-loop edge with exactly one end there; loop signs are unchanged.
  Vertex flips, edge relabellings and storage-order changes generate
  equivalence of ribbon graphs (a global reflection is the flip of every
  vertex at once).

Everything in this module is immutable after construction; operations are
pure functions returning new values.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union


class RibbonGraphError(Exception):
    """Base class for errors raised by this package."""


class InvalidGraph(RibbonGraphError):
    """A rotation-system description violates a structural invariant."""


class UnknownEdge(RibbonGraphError):
    """An edge label does not name an edge of the host graph."""


class End(NamedTuple):
    """One of the two ends of an edge, e.g. ``End('a', 1)`` for ``a.1``."""

    label: str
    slot: int

    def __str__(self) -> str:
        return f"{self.label}.{self.slot}"


class Mark(NamedTuple):
    """A directed labelled marking arrow sitting in a vertex rotation."""

    label: str
    forward: bool

    def __str__(self) -> str:
        return (">" if self.forward else "<") + self.label


class Arrow(NamedTuple):
    """A directed labelled arrow on an oriented cycle."""

    label: str
    forward: bool

    def __str__(self) -> str:
        return (">" if self.forward else "<") + self.label


_END_RE = re.compile(r"^([A-Za-z0-9_]+)\.([12])$")

EndLike = Union[End, str]
EdgeSubset = frozenset


def as_end(item: EndLike) -> End:
    """Coerce ``"a.1"`` or an :class:`End` to an :class:`End`."""
    if isinstance(item, End):
        if item.slot not in (1, 2):
            raise InvalidGraph(f"bad end slot in {item!r}")
        return item
    m = _END_RE.match(item)
    if not m:
        raise InvalidGraph(f"malformed edge end {item!r} (expected label.1 or label.2)")
    return End(m.group(1), int(m.group(2)))


def _as_sign(value) -> int:
    if value in (1, +1, "+"):
        return 1
    if value in (-1, "-"):
        return -1
    raise InvalidGraph(f"bad twist sign {value!r} (expected + or -)")


class RibbonGraph:
    """An immutable ribbon graph given by a signed rotation system.

    ``vertices`` maps vertex names to rotations; a rotation is the cyclic
    sequence of edge ends at the vertex, stored in the package's fixed
    chirality.  ``signs`` maps each edge label to its twist sign.
    """

    __slots__ = ("_names", "_rots", "_signs", "_cache")

    def __init__(self, vertices, signs, _validate: bool = True):
        names = []
        rots = []
        for name, rotation in vertices.items() if isinstance(vertices, Mapping) else vertices:
            names.append(str(name))
            rots.append(tuple(as_end(x) for x in rotation))
        self._names = tuple(names)
        self._rots = tuple(rots)
        self._signs = {str(k): _as_sign(v) for k, v in dict(signs).items()}
        self._cache: dict = {}
        if _validate:
            self._check()

    def _check(self) -> None:
        if len(set(self._names)) != len(self._names):
            dup = next(n for n in self._names if self._names.count(n) > 1)
            raise InvalidGraph(f"duplicate vertex name {dup!r}")
        seen: dict[End, str] = {}
        for name, rot in zip(self._names, self._rots):
            for e in rot:
                if e in seen:
                    raise InvalidGraph(
                        f"duplicate edge end {e} at vertex {name!r} (already at {seen[e]!r})"
                    )
                if e.label not in self._signs:
                    raise InvalidGraph(f"unknown edge end {e} at vertex {name!r}: no such edge")
                seen[e] = name
        for label in self._signs:
            for slot in (1, 2):
                if End(label, slot) not in seen:
                    raise InvalidGraph(f"missing end {label}.{slot} for edge {label!r}")

    # -- basic accessors -------------------------------------------------

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return self._names

    def rotation(self, name: str) -> tuple[End, ...]:
        try:
            return self._rots[self._names.index(name)]
        except ValueError:
            raise InvalidGraph(f"no vertex named {name!r}") from None

    @property
    def rotations(self) -> tuple[tuple[End, ...], ...]:
        return self._rots

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return tuple(sorted(self._signs))

    def sign(self, label: str) -> int:
        try:
            return self._signs[label]
        except KeyError:
            raise UnknownEdge(f"unknown edge {label!r}") from None

    @property
    def signs(self) -> dict[str, int]:
        return dict(self._signs)

    @property
    def n_vertices(self) -> int:
        return len(self._names)

    @property
    def n_edges(self) -> int:
        return len(self._signs)

    def degree(self, name: str) -> int:
        return len(self.rotation(name))

    def _ends_index(self) -> dict:
        idx = self._cache.get("ends")
        if idx is None:
            idx = {}
            for name, rot in zip(self._names, self._rots):
                for pos, e in enumerate(rot):
                    idx.setdefault(e.label, [None, None])[e.slot - 1] = (name, pos)
            self._cache["ends"] = idx
        return idx

    def ends_of(self, label: str) -> tuple[tuple[str, int], tuple[str, int]]:
        """Locate both ends of ``label`` as ``(vertex name, position)`` pairs."""
        self.sign(label)
        first, second = self._ends_index()[label]
        return first, second

    def vertex_of_end(self, e: EndLike) -> str:
        e = as_end(e)
        for name, rot in zip(self._names, self._rots):
            if e in rot:
                return name
        raise InvalidGraph(f"end {e} not present")

    def check_subset(self, edges: Iterable[str]) -> frozenset:
        """Validate an edge subset against this graph and freeze it."""
        sub = frozenset(edges)
        for label in sub:
            if label not in self._signs:
                raise UnknownEdge(f"unknown edge {label!r}")
        return sub

    def complement(self, edges: Iterable[str]) -> frozenset:
        return frozenset(self._signs) - self.check_subset(edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        return (
            self._names == other._names
            and self._rots == other._rots
            and self._signs == other._signs
        )

    def __hash__(self) -> int:
        return hash((self._names, self._rots, tuple(sorted(self._signs.items()))))

    def __repr__(self) -> str:
        parts = []
        for name, rot in zip(self._names, self._rots):
            parts.append(f"{name}:({' '.join(map(str, rot))})")
        sgn = "".join("+" if self._signs[k] > 0 else "-" for k in sorted(self._signs))
        return f"RibbonGraph({'; '.join(parts)}; signs {sgn or '-none-'})"

    # -- equivalence generators (used by tests and canonical form) ------

    def flipped(self, name: str) -> "RibbonGraph":
        """Flip one vertex disc over."""
        i = self._names.index(name)
        rots = list(self._rots)
        rots[i] = tuple(reversed(rots[i]))
        signs = dict(self._signs)
        counts = {}
        for e in self._rots[i]:
            counts[e.label] = counts.get(e.label, 0) + 1
        for label, c in counts.items():
            if c == 1:
                signs[label] = -signs[label]
        return RibbonGraph(zip(self._names, rots), signs, _validate=False)

    def reflected(self) -> "RibbonGraph":
        """Mirror image: every vertex flipped at once."""
        g = self
        for name in self._names:
            g = g.flipped(name)
        return g

    def rotated(self, name: str, k: int) -> "RibbonGraph":
        """Rotate the stored start of one rotation (no geometric effect)."""
        i = self._names.index(name)
        rots = list(self._rots)
        rot = rots[i]
        if rot:
            k %= len(rot)
            rots[i] = rot[k:] + rot[:k]
        return RibbonGraph(zip(self._names, rots), self._signs, _validate=False)

    def reordered(self, order: Sequence[str]) -> "RibbonGraph":
        """Permute vertex storage order (no geometric effect)."""
        if sorted(order) != sorted(self._names):
            raise InvalidGraph("reordering must permute the vertex names")
        return RibbonGraph(
            [(n, self.rotation(n)) for n in order], self._signs, _validate=False
        )

    def relabeled(self, mapping: Mapping[str, str]) -> "RibbonGraph":
        """Rename edges by the given injective mapping."""
        new = {mapping.get(k, k) for k in self._signs}
        if len(new) != len(self._signs):
            raise InvalidGraph("edge relabelling must be injective")
        rots = tuple(
            tuple(End(mapping.get(e.label, e.label), e.slot) for e in rot)
            for rot in self._rots
        )
        signs = {mapping.get(k, k): v for k, v in self._signs.items()}
        return RibbonGraph(zip(self._names, rots), signs, _validate=False)

    # -- cached derived data --------------------------------------------

    def _indexed(self) -> "_Indexed":
        idx = self._cache.get("idx")
        if idx is None:
            idx = _Indexed(self)
            self._cache["idx"] = idx
        return idx

    def canonical_code(self) -> str:
        code = self._cache.get("code")
        if code is None:
            code = canonical_form(self)
            self._cache["code"] = code
        return code


class _Indexed:
    """Integer-indexed view of a graph: darts ``2*i + (slot-1)`` per edge ``i``."""

    __slots__ = ("labels", "eindex", "nv", "ne", "rot", "dart_vertex", "dart_pos", "sign")

    def __init__(self, g: RibbonGraph):
        self.labels = sorted(g.signs)
        self.eindex = {lab: i for i, lab in enumerate(self.labels)}
        self.nv = g.n_vertices
        self.ne = len(self.labels)
        self.sign = [g.sign(lab) for lab in self.labels]
        self.rot = []
        nd = 2 * self.ne
        self.dart_vertex = [0] * nd
        self.dart_pos = [0] * nd
        for vi, rot in enumerate(g.rotations):
            darts = []
            for pos, e in enumerate(rot):
                d = 2 * self.eindex[e.label] + (e.slot - 1)
                darts.append(d)
                self.dart_vertex[d] = vi
                self.dart_pos[d] = pos
            self.rot.append(darts)


# -- construction ---------------------------------------------------------


def build_graph(vertices, signs) -> RibbonGraph:
    """Build and validate a ribbon graph from a rotation-system description.

    ``vertices`` is a mapping (or sequence of pairs) from vertex name to a
    rotation, each rotation a sequence of ends given as ``End`` values or
    strings like ``"a.1"``.  ``signs`` maps edge labels to ``+1``/``-1`` or
    ``"+"``/``"-"``.  Errors report the offending end and vertex.
    """
    return RibbonGraph(vertices, signs)


def single_vertex(rotation: str = "", signs: str = "") -> RibbonGraph:
    """One-vertex graph from a compact description.

    ``rotation`` lists edge labels in cyclic order, each appearing twice,
    e.g. ``"a b a b"``; ``signs`` gives one ``+``/``-`` per distinct label
    in order of first appearance.
    """
    items = rotation.split()
    order: list[str] = []
    seen: dict[str, int] = {}
    ends = []
    for lab in items:
        seen[lab] = seen.get(lab, 0) + 1
        if seen[lab] == 1:
            order.append(lab)
        ends.append(End(lab, seen[lab]))
    sign_map = {}
    cleaned = signs.replace(" ", "")
    for i, lab in enumerate(order):
        sign_map[lab] = cleaned[i] if i < len(cleaned) else "+"
    return RibbonGraph({"v": ends}, sign_map)


def disjoint_union(*graphs: RibbonGraph) -> RibbonGraph:
    """Disjoint union; vertex names and edge labels are prefixed per part."""
    vertices = []
    signs = {}
    for i, g in enumerate(graphs):
        p = f"g{i}." if len(graphs) > 1 else ""
        for name in g.vertex_names:
            vertices.append(
                (p + name, [End(p + e.label, e.slot) for e in g.rotation(name)])
            )
        for lab, s in g.signs.items():
            signs[p + lab] = s
    return RibbonGraph(vertices, signs)


# -- subgraphs ------------------------------------------------------------


def induced_subgraph(g: RibbonGraph, edges: Iterable[str]) -> RibbonGraph:
    """The ribbon subgraph induced by an edge subset: those edges plus the
    vertices incident to them, rotations restricted in cyclic order."""
    sub = g.check_subset(edges)
    vertices = []
    for name in g.vertex_names:
        rot = tuple(e for e in g.rotation(name) if e.label in sub)
        if rot:
            vertices.append((name, rot))
    return RibbonGraph(vertices, {k: g.sign(k) for k in sub}, _validate=False)


def delete_edges(g: RibbonGraph, edges: Iterable[str]) -> RibbonGraph:
    """Delete an edge subset, keeping every vertex (isolated ones included)."""
    sub = g.check_subset(edges)
    vertices = [
        (name, tuple(e for e in g.rotation(name) if e.label not in sub))
        for name in g.vertex_names
    ]
    signs = {k: v for k, v in g.signs.items() if k not in sub}
    return RibbonGraph(vertices, signs, _validate=False)


# -- arrow presentations ----------------------------------------------------


class ArrowPresentation:
    """A set of oriented cycles with directed labelled arrows, exactly two
    arrows per label.  An edge-free encoding of a ribbon graph."""

    __slots__ = ("cycles",)

    def __init__(self, cycles: Iterable[Iterable[Arrow]], validate: bool = True):
        self.cycles = tuple(tuple(Arrow(a.label, bool(a.forward)) for a in c) for c in cycles)
        if validate:
            counts: dict[str, int] = {}
            for c in self.cycles:
                for a in c:
                    counts[a.label] = counts.get(a.label, 0) + 1
            for lab, n in counts.items():
                if n != 2:
                    raise InvalidGraph(f"label {lab!r} carries {n} arrows (need exactly 2)")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArrowPresentation):
            return NotImplemented
        return self.cycles == other.cycles

    def __repr__(self) -> str:
        inner = "; ".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles)
        return f"ArrowPresentation[{inner}]"


def to_arrow_presentation(g: RibbonGraph) -> ArrowPresentation:
    """Encode ``g`` as marked vertex-boundary cycles, one cycle per vertex.

    End 1 of every edge becomes a forward arrow; end 2 follows the edge
    boundary orientation, so it is forward exactly when the edge is
    untwisted.
    """
    cycles = []
    for name in g.vertex_names:
        cyc = []
        for e in g.rotation(name):
            fwd = True if e.slot == 1 else g.sign(e.label) > 0
            cyc.append(Arrow(e.label, fwd))
        cycles.append(cyc)
    return ArrowPresentation(cycles, validate=False)


def from_arrow_presentation(p: ArrowPresentation) -> RibbonGraph:
    """Rebuild the ribbon graph of an arrow presentation.

    Cycles become vertices (named ``v0``, ``v1``, ...); the two arrows of a
    label become the edge's ends, twisted exactly when their directions
    relative to their cycles disagree.
    """
    counts: dict[str, int] = {}
    first_dir: dict[str, bool] = {}
    vertices = []
    signs: dict[str, int] = {}
    for i, cyc in enumerate(p.cycles):
        rot = []
        for a in cyc:
            counts[a.label] = counts.get(a.label, 0) + 1
            slot = counts[a.label]
            if slot == 1:
                first_dir[a.label] = a.forward
            elif slot == 2:
                signs[a.label] = 1 if a.forward == first_dir[a.label] else -1
            else:
                raise InvalidGraph(f"label {a.label!r} carries more than 2 arrows")
            rot.append(End(a.label, slot))
        vertices.append((f"v{i}", rot))
    for lab, n in counts.items():
        if n != 2:
            raise InvalidGraph(f"label {lab!r} carries {n} arrows (need exactly 2)")
    return RibbonGraph(vertices, signs)


# -- marked ribbon graphs ---------------------------------------------------


class MarkedRibbonGraph:
    """A ribbon graph together with paired marking arrows interleaved in its
    vertex rotations; records removed edges without losing their position."""

    __slots__ = ("_names", "_items", "_signs")

    def __init__(self, vertices, signs, validate: bool = True):
        names = []
        items = []
        for name, rotation in vertices.items() if isinstance(vertices, Mapping) else vertices:
            names.append(str(name))
            row = []
            for x in rotation:
                if isinstance(x, (End, Mark)):
                    row.append(x)
                else:
                    row.append(as_end(x))
            items.append(tuple(row))
        self._names = tuple(names)
        self._items = tuple(items)
        self._signs = {str(k): _as_sign(v) for k, v in dict(signs).items()}
        if validate:
            self._check()

    def _check(self) -> None:
        mark_counts: dict[str, int] = {}
        for row in self._items:
            for x in row:
                if isinstance(x, Mark):
                    mark_counts[x.label] = mark_counts.get(x.label, 0) + 1
        for lab, n in mark_counts.items():
            if n != 2:
                raise InvalidGraph(f"mark label {lab!r} appears {n} times (need exactly 2)")
            if lab in self._signs:
                raise InvalidGraph(f"mark label {lab!r} collides with an edge label")
        RibbonGraph(
            zip(self._names, (tuple(x for x in row if isinstance(x, End)) for row in self._items)),
            self._signs,
        )

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return self._names

    def items(self, name: str) -> tuple:
        return self._items[self._names.index(name)]

    @property
    def all_items(self) -> tuple[tuple, ...]:
        return self._items

    @property
    def signs(self) -> dict[str, int]:
        return dict(self._signs)

    @property
    def mark_labels(self) -> tuple[str, ...]:
        labs = {x.label for row in self._items for x in row if isinstance(x, Mark)}
        return tuple(sorted(labs))

    @property
    def graph(self) -> RibbonGraph:
        """The underlying ribbon graph, marks dropped."""
        return RibbonGraph(
            zip(self._names, (tuple(x for x in row if isinstance(x, End)) for row in self._items)),
            self._signs,
            _validate=False,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MarkedRibbonGraph):
            return NotImplemented
        return (
            self._names == other._names
            and self._items == other._items
            and self._signs == other._signs
        )

    def __repr__(self) -> str:
        parts = []
        for name, row in zip(self._names, self._items):
            parts.append(f"{name}:({' '.join(map(str, row))})")
        return f"MarkedRibbonGraph({'; '.join(parts)})"


def mark_and_remove(g: RibbonGraph, edges: Iterable[str]) -> MarkedRibbonGraph:
    """Replace each edge of the subset by a pair of marking arrows occupying
    the same rotation slots, directions following the edge boundary."""
    sub = g.check_subset(edges)
    vertices = []
    for name in g.vertex_names:
        row = []
        for e in g.rotation(name):
            if e.label in sub:
                fwd = True if e.slot == 1 else g.sign(e.label) > 0
                row.append(Mark(e.label, fwd))
            else:
                row.append(e)
        vertices.append((name, row))
    signs = {k: v for k, v in g.signs.items() if k not in sub}
    return MarkedRibbonGraph(vertices, signs, validate=False)


def restore(m: MarkedRibbonGraph) -> RibbonGraph:
    """Reattach one edge per mark pair, inverting :func:`mark_and_remove`."""
    counts: dict[str, int] = {}
    first_dir: dict[str, bool] = {}
    signs = m.signs
    vertices = []
    for name in m.vertex_names:
        rot = []
        for x in m.items(name):
            if isinstance(x, Mark):
                counts[x.label] = counts.get(x.label, 0) + 1
                slot = counts[x.label]
                if slot == 1:
                    first_dir[x.label] = x.forward
                elif slot == 2:
                    signs[x.label] = 1 if x.forward == first_dir[x.label] else -1
                else:
                    raise InvalidGraph(f"mark label {x.label!r} appears more than twice")
                rot.append(End(x.label, slot))
            else:
                rot.append(x)
        vertices.append((name, rot))
    for lab, n in counts.items():
        if n != 2:
            raise InvalidGraph(f"unmatched mark label {lab!r} ({n} marks)")
    return RibbonGraph(vertices, signs)


# -- canonical form ---------------------------------------------------------

_SEP_VERTEX = -1
_SEP_SIGNS = -2


def _component_darts(idx: _Indexed) -> list[list[int]]:
    """Vertex indices grouped by connected component (edgeless ones too)."""
    n = idx.nv
    comp = [-1] * n
    out = []
    for start in range(n):
        if comp[start] >= 0:
            continue
        ci = len(out)
        comp[start] = ci
        stack = [start]
        members = [start]
        while stack:
            v = stack.pop()
            for d in idx.rot[v]:
                w = idx.dart_vertex[d ^ 1]
                if comp[w] < 0:
                    comp[w] = ci
                    stack.append(w)
                    members.append(w)
        out.append(members)
    return out


def _trace(idx: _Indexed, start_dart: int, start_flip: int, best):
    """Breadth-first code of the component of ``start_dart``.

    Vertices are numbered in discovery order; each vertex's rotation is read
    from its arrival dart, forwards or backwards according to the vertex's
    flip state; flips propagate so that every tree edge normalises to an
    untwisted band.  Returns the emitted token tuple, or ``None`` as soon as
    it compares greater than ``best``.
    """
    rot = idx.rot
    dart_vertex = idx.dart_vertex
    dart_pos = idx.dart_pos
    esign = idx.sign

    vmap: dict[int, int] = {}
    vflip: dict[int, int] = {}
    emap: dict[int, int] = {}
    eorder: list[int] = []
    v0 = dart_vertex[start_dart]
    vmap[v0] = 0
    vflip[v0] = start_flip
    queue = deque([(v0, dart_pos[start_dart])])
    tokens: list[int] = []
    nbest = len(best) if best is not None else -1
    ti = 0

    while queue:
        v, p0 = queue.popleft()
        r = rot[v]
        deg = len(r)
        step = 1 if vflip[v] > 0 else -1
        for k in range(deg):
            d = r[(p0 + step * k) % deg]
            e = d >> 1
            en = emap.get(e)
            if en is None:
                en = len(eorder)
                emap[e] = en
                eorder.append(e)
                w = dart_vertex[d ^ 1]
                if w not in vmap:
                    vmap[w] = len(vmap)
                    vflip[w] = vflip[v] * esign[e]
                    queue.append((w, dart_pos[d ^ 1]))
            tokens.append(en)
            if nbest >= 0:
                if ti < nbest:
                    b = best[ti]
                    if en > b:
                        return None
                    if en < b:
                        nbest = -1
                ti += 1
        tokens.append(_SEP_VERTEX)
        if nbest >= 0:
            if ti < nbest:
                b = best[ti]
                if _SEP_VERTEX > b:
                    return None
                if _SEP_VERTEX < b:
                    nbest = -1
            ti += 1

    tokens.append(_SEP_SIGNS)
    for e in eorder:
        u = dart_vertex[2 * e]
        w = dart_vertex[2 * e + 1]
        tokens.append(esign[e] * vflip[u] * vflip[w])
    return tuple(tokens)


def _component_code(idx: _Indexed, members: list[int]) -> tuple:
    """Minimum trace over every start dart and chirality of one component."""
    best = None
    for v in members:
        for d in idx.rot[v]:
            for flip in (1, -1):
                t = _trace(idx, d, flip, best)
                if t is not None and (best is None or t < best):
                    best = t
    if best is None:
        # edgeless component: a single bare vertex
        return (_SEP_VERTEX, _SEP_SIGNS)
    return best


def _render_component(tokens: tuple, nv: int, ne: int) -> str:
    rows = []
    row: list[str] = []
    i = 0
    while tokens[i] != _SEP_SIGNS:
        if tokens[i] == _SEP_VERTEX:
            rows.append(",".join(row))
            row = []
        else:
            row.append(str(tokens[i]))
        i += 1
    if not rows:
        rows.append("")
    signs = "".join("+" if s > 0 else "-" for s in tokens[i + 1 :])
    return f"{nv}v{ne}e:" + "|".join(rows) + ";" + signs


def canonical_form(g: RibbonGraph) -> str:
    """A code equal for two graphs exactly when they are equivalent.

    Invariant under edge relabelling, vertex storage order, rotation of any
    rotation, any vertex flip, and global reflection.  Components are coded
    independently and sorted.
    """
    idx = g._indexed()
    parts = []
    for members in _component_darts(idx):
        tokens = _component_code(idx, members)
        ne = sum(len(idx.rot[v]) for v in members) // 2
        parts.append(_render_component(tokens, len(members), ne))
    return "&".join(sorted(parts))


def is_equivalent(g: RibbonGraph, h: RibbonGraph) -> bool:
    """Whether two ribbon graphs are equivalent as embedded graphs."""
    return g.canonical_code() == h.canonical_code()


_COMP_RE = re.compile(r"^(\d+)v(\d+)e:(.*);([+-]*)$")


def from_canonical_code(code: str) -> RibbonGraph:
    """Rebuild a representative graph from a canonical code."""
    vertices = []
    signs = {}
    for ci, part in enumerate(code.split("&")):
        m = _COMP_RE.match(part)
        if not m:
            raise InvalidGraph(f"malformed canonical code component {part!r}")
        nv, ne, body, sgn = int(m.group(1)), int(m.group(2)), m.group(3), m.group(4)
        if len(sgn) != ne:
            raise InvalidGraph(f"sign vector length mismatch in {part!r}")
        rows = body.split("|") if nv else []
        if len(rows) != nv:
            raise InvalidGraph(f"vertex count mismatch in {part!r}")
        counts: dict[str, int] = {}
        for vi, row in enumerate(rows):
            rot = []
            for tok in row.split(","):
                if tok == "":
                    continue
                lab = f"c{ci}e{tok}"
                counts[lab] = counts.get(lab, 0) + 1
                rot.append(End(lab, counts[lab]))
            vertices.append((f"c{ci}v{vi}", rot))
        for ei in range(ne):
            signs[f"c{ci}e{ei}"] = 1 if sgn[ei] == "+" else -1
    return RibbonGraph(vertices, signs)


def equivalence_orbit(g: RibbonGraph, max_size: int = 20000) -> Iterator[RibbonGraph]:
    """All storage variants reachable by flips, rotations and reorderings.

    Exhaustive only at desk scale; used by tests to check that the canonical
    code is constant on an orbit.
    """
    import itertools

    names = g.vertex_names
    n = 0
    for flips in itertools.product((False, True), repeat=len(names)):
        h = g
        for name, f in zip(names, flips):
            if f:
                h = h.flipped(name)
        rot_ranges = [range(max(1, h.degree(name))) for name in names]
        for shifts in itertools.product(*rot_ranges):
            h2 = h
            for name, k in zip(names, shifts):
                if k:
                    h2 = h2.rotated(name, k)
            for order in itertools.permutations(names):
                yield h2.reordered(order)
                n += 1
                if n >= max_size:
                    return
