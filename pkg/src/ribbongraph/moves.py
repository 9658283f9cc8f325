"""The dual-of-a-join-summand move and the search relating partial duals.

Dualling a join summand replaces one summand of a join by its geometric
dual and leaves the rest alone; together with taking the geometric dual of
the whole graph it relates all partially dual graphs of Euler genus zero
and one.  The search works breadth-first over canonical codes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import RibbonGraph, is_equivalent
from .decomposition import (
    NotAJoinSummand,
    is_connected,
    induced_subgraph,
    join_summand_splits,
    summand_edge_sets,
)
from .duality import geometric_dual, partial_dual
from .topology import surface_stats


@dataclass(frozen=True)
class MoveStep:
    kind: str  # "dual-join-summand" or "geometric-dual"
    edges: frozenset


@dataclass(frozen=True)
class MoveTrace:
    """A replayable move sequence; codes are the canonical codes of every
    intermediate graph including both endpoints."""

    steps: tuple[MoveStep, ...]
    codes: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, g: RibbonGraph) -> RibbonGraph:
        # steps recorded under a shortcut policy may bundle several
        # elementary moves, so replay applies the recorded duals directly
        for step in self.steps:
            if step.kind == "geometric-dual":
                g = geometric_dual(g)
            else:
                g = partial_dual(g, step.edges)
        return g


@dataclass(frozen=True)
class MoveSearchResult:
    trace: Optional[MoveTrace]
    closed: bool  # reachable set exhausted below the bound
    max_depth: int

    @property
    def found(self) -> bool:
        return self.trace is not None


def binary_summand_sets(g: RibbonGraph) -> list[frozenset]:
    """Edge sets of the two-sided join splits of ``g``: exactly the sets a
    single dual-of-a-join-summand move may act on."""
    return sorted({x for _, x in join_summand_splits(g)}, key=sorted)


def dual_join_summand_move(g: RibbonGraph, factor: Iterable[str]) -> RibbonGraph:
    """Replace the join summand on ``factor`` by its geometric dual.

    ``factor`` must be one side of a two-sided join split of ``g`` (not
    every union of prime factors qualifies: a factor whose ends interleave
    with several neighbours at its join vertex cannot stand alone).  The
    result is the partial dual with respect to the summand's edges; the
    join structure of the result is verified explicitly: it splits into a
    part equivalent to the untouched side and a part equivalent to the
    summand's dual, and genus and orientability are preserved.
    """
    fac = g.check_subset(factor)
    if fac not in set(binary_summand_sets(g)):
        raise NotAJoinSummand(
            f"{sorted(fac)} is not one side of a join split of the graph"
        )
    result = partial_dual(g, fac)

    other = g.complement(fac)
    part_p = induced_subgraph(g, other)
    part_q_dual = geometric_dual(induced_subgraph(g, fac))
    ok = False
    for v, x in join_summand_splits(result):
        if x == fac and is_equivalent(
            induced_subgraph(result, x), part_q_dual
        ) and is_equivalent(induced_subgraph(result, other), part_p):
            ok = True
            break
    assert ok, "dual of a join summand must rebuild as untouched-part join dual-part"
    before, after = surface_stats(g), surface_stats(result)
    assert before.euler_genus == after.euler_genus
    assert before.orientable == after.orientable
    return result


def _neighbours(g: RibbonGraph, policy: str = "unions"):
    """All single search steps from ``g``: summand duals plus the whole
    geometric dual.

    ``splits`` duals one side of a two-sided join split (each step is a
    single legal move).  ``unions`` duals any connected union of prime
    factors, and ``primes`` any single prime factor; both may take steps
    that are shortcuts for short sequences of legal moves, never leaving
    the set of partial duals, and reach the same graphs.
    """
    out = []
    full = frozenset(g.edge_labels)
    if policy == "unions":
        factor_sets = summand_edge_sets(g)
    elif policy == "splits":
        factor_sets = binary_summand_sets(g)
    elif policy == "primes":
        from .decomposition import prime_factorization

        factor_sets = list(prime_factorization(g).factors)
    else:
        raise ValueError(f"unknown move policy {policy!r}")
    for edges in factor_sets:
        if edges == full:
            continue
        out.append((MoveStep("dual-join-summand", edges), partial_dual(g, edges)))
    out.append((MoveStep("geometric-dual", full), geometric_dual(g)))
    return out


def move_related(
    g: RibbonGraph, h: RibbonGraph, bound: int = 8, policy: str = "unions"
) -> MoveSearchResult:
    """Shortest move sequence taking ``g`` to a graph equivalent to ``h``.

    Breadth-first over canonical codes; ``closed`` reports whether the
    search saw its whole reachable set before hitting the depth bound, so a
    missing trace is a proof of unrelatedness only when ``closed`` is true.
    """
    if not is_connected(g) or not is_connected(h):
        raise ValueError("move search requires connected graphs")
    target = h.canonical_code()
    start_code = g.canonical_code()
    if start_code == target:
        return MoveSearchResult(MoveTrace((), (start_code,)), True, 0)
    seen: dict[str, tuple[Optional[str], Optional[MoveStep], RibbonGraph]] = {
        start_code: (None, None, g)
    }
    queue = deque([(start_code, 0)])
    closed = True
    max_depth = 0
    while queue:
        code, depth = queue.popleft()
        if depth >= bound:
            closed = False
            continue
        cur = seen[code][2]
        for step, nxt in _neighbours(cur, policy):
            ncode = nxt.canonical_code()
            if ncode in seen:
                continue
            seen[ncode] = (code, step, nxt)
            max_depth = max(max_depth, depth + 1)
            if ncode == target:
                steps = []
                codes = [ncode]
                at = ncode
                while seen[at][0] is not None:
                    steps.append(seen[at][1])
                    at = seen[at][0]
                    codes.append(at)
                return MoveSearchResult(
                    MoveTrace(tuple(reversed(steps)), tuple(reversed(codes))),
                    True,
                    depth + 1,
                )
            queue.append((ncode, depth + 1))
    return MoveSearchResult(None, closed, max_depth)


def join_partial_dual_distributes(
    p: RibbonGraph,
    vp: str,
    q: RibbonGraph,
    vq: str,
    edges: Iterable[str],
    gap: int = 0,
    q_offset: int = 0,
) -> bool:
    """Check that a partial dual of a join splits into the partial duals of
    the summands.

    Builds the join, takes its partial dual, and verifies that the result
    splits along the summand edge sets into parts equivalent to each side's
    own partial dual.
    """
    from .decomposition import join

    g = join(p, vp, q, vq, gap=gap, q_offset=q_offset)
    sub = g.check_subset(edges)
    result = partial_dual(g, sub)
    want_p = partial_dual(p, sub & frozenset(p.edge_labels))
    want_q = partial_dual(q, sub & frozenset(q.edge_labels))
    ep = frozenset(p.edge_labels)
    eq = frozenset(q.edge_labels)
    if not eq or not ep:
        return is_equivalent(result, want_p if not eq else want_q)
    for v, x in join_summand_splits(result):
        if x == eq:
            if is_equivalent(induced_subgraph(result, eq), want_q) and is_equivalent(
                induced_subgraph(result, ep), want_p
            ):
                return True
    return False
