"""Homotopy and strong homotopy of maps between finite digital images.

A homotopy is stored as its sequence of stage maps ``H_0 .. H_k``.  Validity
is decided either by continuity of the stacked map on the product with the
time interval (NP_1 for ordinary homotopies, NP_2 for strong ones) or by the
equivalent stage-by-stage criteria.  Classification questions ("are f and g
(strongly) homotopic?") are answered by breadth-first search in the graph
whose nodes are continuous maps and whose edges are one-step homotopies;
every search carries a budget and reports ``Verdict.UNDECIDED`` rather than
guessing when it runs out.
"""
from __future__ import annotations

import enum
import logging
import math
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import (
    DigitalImage,
    ParameterError,
    VertexMap,
    _bits,
    _continuous_value_tuples,
    induced_subimage,
    interval_image,
    is_continuous,
    product_image,
)

log = logging.getLogger(__name__)

DEFAULT_MAP_BUDGET = 10**6
DEFAULT_CANDIDATE_BUDGET = 10**6


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"

    def __bool__(self):
        if self is Verdict.UNDECIDED:
            raise ValueError("undecided: budget exhausted, no boolean answer")
        return self is Verdict.YES

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.YES if flag else cls.NO


class CandidateBudgetWarning(UserWarning):
    """The candidate product for a neighbour enumeration is very large."""


@dataclass(frozen=True)
class Homotopy:
    """Stages ``H_0 .. H_k`` of a map ``X x [0,k] -> Y``."""

    dom: DigitalImage
    cod: DigitalImage
    stages: tuple[VertexMap, ...]

    def __post_init__(self):
        if not self.stages:
            raise ParameterError("a homotopy needs at least one stage")
        for s in self.stages:
            if s.dom != self.dom or s.cod != self.cod:
                raise ParameterError("stage with mismatched domain/codomain")

    @classmethod
    def from_values(cls, dom: DigitalImage, cod: DigitalImage,
                    stages: Sequence[Sequence[int]]) -> "Homotopy":
        return cls(dom, cod, tuple(VertexMap(dom, cod, tuple(s)) for s in stages))

    @property
    def k(self) -> int:
        return len(self.stages) - 1

    @property
    def start(self) -> VertexMap:
        return self.stages[0]

    @property
    def end(self) -> VertexMap:
        return self.stages[-1]

    def as_product_map(self, u: int) -> VertexMap:
        """``H`` as a single map on ``dom x [0,k]`` with NP_u adjacency."""
        P = product_image([self.dom, interval_image(0, self.k)], u)
        vals = [self.stages[t].values[x] for x in range(self.dom.n) for t in range(self.k + 1)]
        return VertexMap(P, self.cod, tuple(vals))

    def to_json(self) -> dict:
        return {"k": self.k, "stages": [list(s.values) for s in self.stages]}

    @classmethod
    def from_json(cls, dom: DigitalImage, cod: DigitalImage, data: dict) -> "Homotopy":
        H = cls.from_values(dom, cod, data["stages"])
        if "k" in data and data["k"] != H.k:
            raise ParameterError(f"k={data['k']} disagrees with {len(H.stages)} stages")
        return H


# -- one-step criteria -----------------------------------------------------

def _pointwise_close(f: VertexMap, g: VertexMap) -> bool:
    cm = f.cod.closed_masks
    return all(cm[a] >> b & 1 for a, b in zip(f.values, g.values))


def _strong_close(f: VertexMap, g: VertexMap) -> bool:
    # NP_2 adjacency of (x,0) and (x',1) requires x <-> x' or x == x'.
    cm = f.cod.closed_masks
    fv, gv = f.values, g.values
    if not all(cm[a] >> b & 1 for a, b in zip(fv, gv)):
        return False
    return all(cm[fv[x]] >> gv[y] & 1 and cm[fv[y]] >> gv[x] & 1 for x, y in f.dom.edges)


def _check_pair(f: VertexMap, g: VertexMap) -> None:
    if f.dom != g.dom or f.cod != g.cod:
        raise ParameterError("maps have different domains or codomains")
    if not is_continuous(f) or not is_continuous(g):
        raise ParameterError("one-step criteria are stated for continuous maps")


def one_step_homotopic(f: VertexMap, g: VertexMap) -> bool:
    """True iff ``f(x)`` and ``g(x)`` are adjacent or equal for every x."""
    _check_pair(f, g)
    return _pointwise_close(f, g)


def one_step_strong_homotopic(f: VertexMap, g: VertexMap) -> bool:
    """True iff ``f(x)`` and ``g(x')`` are adjacent or equal whenever x and
    x' are adjacent or equal.

    This is exactly NP_2-continuity of the two-stage homotopy; the diagonal
    ``x == x'`` cases are part of it.
    """
    _check_pair(f, g)
    return _strong_close(f, g)


# -- validity of whole homotopies --------------------------------------------

def homotopy_defect(H: Homotopy, f: VertexMap | None = None,
                    g: VertexMap | None = None, strong: bool = False) -> str | None:
    """Reason why ``H`` is not a (strong) homotopy from f to g, or None."""
    if f is not None and H.start != f:
        return "endpoint mismatch: H_0 != f"
    if g is not None and H.end != g:
        return "endpoint mismatch: H_k != g"
    if not is_continuous(H.as_product_map(2 if strong else 1)):
        return "not continuous on the NP_{} product".format(2 if strong else 1)
    return None


def is_valid_homotopy(H: Homotopy, f: VertexMap | None = None,
                      g: VertexMap | None = None) -> bool:
    return homotopy_defect(H, f, g) is None


def is_valid_strong_homotopy(H: Homotopy, f: VertexMap | None = None,
                             g: VertexMap | None = None) -> bool:
    return homotopy_defect(H, f, g, strong=True) is None


def stagewise_valid(H: Homotopy, strong: bool = False) -> bool:
    """Equivalent stage-by-stage check: every stage continuous and each
    consecutive pair one-step (strongly) homotopic."""
    if not all(is_continuous(s) for s in H.stages):
        return False
    close = _strong_close if strong else _pointwise_close
    return all(close(a, b) for a, b in zip(H.stages, H.stages[1:]))


def reverse(H: Homotopy) -> Homotopy:
    return Homotopy(H.dom, H.cod, H.stages[::-1])


def concatenate(H: Homotopy, G: Homotopy) -> Homotopy:
    """``H`` followed by ``G`` on ``[0, k+l+1]``; the seam stage appears twice."""
    if H.dom != G.dom or H.cod != G.cod:
        raise ParameterError("concatenate: homotopies on different images")
    if H.end != G.start:
        raise ParameterError("concatenate: last stage of H is not the first stage of G")
    return Homotopy(H.dom, H.cod, H.stages + G.stages)


def is_punctuated(H: Homotopy) -> bool:
    return all(sum(a != b for a, b in zip(s.values, t.values)) <= 1
               for s, t in zip(H.stages, H.stages[1:]))


def puncturate_one_step(f: VertexMap, g: VertexMap, compact: bool = False) -> Homotopy:
    """Punctuated homotopy from f to g moving one point per step.

    Stage ``t`` agrees with g on vertices ``< t`` and with f elsewhere, so
    there are ``n + 1`` stages.  With ``compact`` repeated stages are dropped.
    """
    if not one_step_strong_homotopic(f, g):
        raise ParameterError("puncturate_one_step needs f, g strongly homotopic in one step")
    n = f.dom.n
    stages = [tuple(g.values[i] if i < t else f.values[i] for i in range(n)) for t in range(n + 1)]
    if compact:
        stages = [s for i, s in enumerate(stages) if i == 0 or s != stages[i - 1]]
    H = Homotopy.from_values(f.dom, f.cod, stages)
    assert is_punctuated(H) and stagewise_valid(H, strong=True)
    return H


# -- neighbour enumeration and BFS -----------------------------------------

def _neighbor_candidates(f: VertexMap, strong: bool, fixed: int | None = None) -> list[int]:
    cm = f.cod.closed_masks
    fv = f.values
    if strong:
        cands = []
        for x in range(f.dom.n):
            allowed = cm[fv[x]]
            for y in f.dom.adj[x]:
                allowed &= cm[fv[y]]
            cands.append(allowed)
    else:
        cands = [cm[v] for v in fv]
    if fixed is not None:
        cands[fixed] &= 1 << fixed
    return cands


def _neighbor_tuples(f: VertexMap, strong: bool, fixed: int | None,
                     candidate_budget: int) -> Iterator[tuple[int, ...]]:
    cands = _neighbor_candidates(f, strong, fixed)
    size = math.prod(bin(c).count("1") for c in cands)
    if size > candidate_budget:
        warnings.warn(f"neighbour enumeration over {size} candidate maps",
                      CandidateBudgetWarning, stacklevel=3)
    # the strong candidate sets already encode the whole one-step criterion
    yield from _continuous_value_tuples(f.dom, f.cod, cands)


def strong_neighbors(f: VertexMap, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> set[VertexMap]:
    """All continuous g strongly homotopic to f in one step (f included)."""
    if not is_continuous(f):
        raise ParameterError("strong_neighbors needs a continuous map")
    return {VertexMap(f.dom, f.cod, v) for v in _neighbor_tuples(f, True, None, candidate_budget)}


def homotopy_neighbors(f: VertexMap, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> set[VertexMap]:
    """All continuous g homotopic to f in one step (f included)."""
    if not is_continuous(f):
        raise ParameterError("homotopy_neighbors needs a continuous map")
    return {VertexMap(f.dom, f.cod, v) for v in _neighbor_tuples(f, False, None, candidate_budget)}


@dataclass
class SearchResult:
    verdict: Verdict
    visited: int
    path: list[tuple[int, ...]] | None = None

    def homotopy(self, dom: DigitalImage, cod: DigitalImage) -> Homotopy | None:
        if self.path is None:
            return None
        return Homotopy.from_values(dom, cod, self.path)


def _bfs(f: VertexMap, goal, strong: bool, fixed: int | None,
         map_budget: int, candidate_budget: int) -> SearchResult:
    start = f.values
    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {start: None}
    queue = deque([start])

    def path_to(node):
        out = []
        while node is not None:
            out.append(node)
            node = parent[node]
        return out[::-1]

    if goal(start):
        return SearchResult(Verdict.YES, 1, [start])
    while queue:
        node = queue.popleft()
        cur = VertexMap(f.dom, f.cod, node)
        for vals in _neighbor_tuples(cur, strong, fixed, candidate_budget):
            if vals in parent:
                continue
            parent[vals] = node
            if goal(vals):
                return SearchResult(Verdict.YES, len(parent), path_to(vals))
            if len(parent) > map_budget:
                log.info("map budget %d exhausted", map_budget)
                return SearchResult(Verdict.UNDECIDED, len(parent))
            queue.append(vals)
    return SearchResult(Verdict.NO, len(parent))


def find_homotopy(f: VertexMap, g: VertexMap, strong: bool = False,
                  map_budget: int = DEFAULT_MAP_BUDGET,
                  candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> SearchResult:
    """BFS for a (strong) homotopy from f to g; the path is a witness whose
    consecutive stages are one-step (strong) homotopies."""
    _check_pair(f, g)
    target = g.values
    return _bfs(f, lambda v: v == target, strong, None, map_budget, candidate_budget)


def strongly_homotopic(f: VertexMap, g: VertexMap, map_budget: int = DEFAULT_MAP_BUDGET,
                       candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> Verdict:
    return find_homotopy(f, g, True, map_budget, candidate_budget).verdict


def homotopic(f: VertexMap, g: VertexMap, map_budget: int = DEFAULT_MAP_BUDGET,
              candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> Verdict:
    return find_homotopy(f, g, False, map_budget, candidate_budget).verdict


def homotopy_class(f: VertexMap, strong: bool = False,
                   map_budget: int = DEFAULT_MAP_BUDGET,
                   candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> set[VertexMap]:
    """The full (strong) homotopy class of f, found by exhaustive BFS.

    Raises ``RuntimeError`` if the class has more than ``map_budget`` maps.
    """
    if not is_continuous(f):
        raise ParameterError("homotopy_class needs a continuous map")
    res = _bfs_collect(f, strong, map_budget, candidate_budget)
    return {VertexMap(f.dom, f.cod, v) for v in res}


def _bfs_collect(f: VertexMap, strong: bool, map_budget: int, candidate_budget: int) -> set:
    seen = {f.values}
    queue = deque([f.values])
    while queue:
        cur = VertexMap(f.dom, f.cod, queue.popleft())
        for vals in _neighbor_tuples(cur, strong, None, candidate_budget):
            if vals not in seen:
                seen.add(vals)
                if len(seen) > map_budget:
                    raise RuntimeError(f"homotopy class exceeds map budget {map_budget}")
                queue.append(vals)
    return seen


# -- reductions ------------------------------------------------------------

def is_strongly_reducible(X: DigitalImage) -> tuple[int, int] | None:
    """Least pair ``(x, y)``, ``x != y``, with ``N*(x) <= N*(y)``, or None."""
    cm = X.closed_masks
    for x in range(X.n):
        for y in range(X.n):
            if x != y and cm[x] & ~cm[y] == 0:
                return x, y
    return None


def find_reducing_map(X: DigitalImage, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
                      ) -> tuple[Verdict, VertexMap | None]:
    """Search for a nonsurjective continuous g one-step homotopic to id_X.

    A dominated vertex gives one directly; otherwise the maps with
    ``g(x) in N*(x)`` are enumerated by backtracking, counting explored
    partial assignments against ``candidate_budget``.
    """
    w = is_strongly_reducible(X)
    if w is not None:
        x, y = w
        vals = list(range(X.n))
        vals[x] = y
        return Verdict.YES, VertexMap(X, X, tuple(vals))
    n = X.n
    cm = X.closed_masks
    earlier = [[v for v in X.adj[x] if v < x] for x in range(n)]
    vals = [0] * n
    nodes = 0

    class _Budget(Exception):
        pass

    def rec(x: int, used: int):
        nonlocal nodes
        nodes += 1
        if nodes > candidate_budget:
            raise _Budget
        if x == n:
            return tuple(vals) if used != (1 << n) - 1 else None
        allowed = cm[x]
        for v in earlier[x]:
            allowed &= cm[vals[v]]
        for y in _bits(allowed):
            vals[x] = y
            found = rec(x + 1, used | (1 << y))
            if found is not None:
                return found
        return None

    try:
        found = rec(0, 0)
    except _Budget:
        return Verdict.UNDECIDED, None
    if found is None:
        return Verdict.NO, None
    return Verdict.YES, VertexMap(X, X, found)


def is_reducible(X: DigitalImage, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> Verdict:
    return find_reducing_map(X, candidate_budget)[0]


@dataclass(frozen=True)
class Reduction:
    """Result of deleting dominated points one at a time.

    ``kept[i]`` is the original vertex now numbered ``i``; ``retraction`` is
    the composite of the one-point moves, a map from the original image onto
    ``image``; ``deleted`` lists ``(x, y)`` moves in original numbering.
    """

    image: DigitalImage
    kept: tuple[int, ...]
    retraction: VertexMap
    deleted: tuple[tuple[int, int], ...]

    @property
    def translation(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.kept)}


def strong_core(X: DigitalImage) -> Reduction:
    alive = list(range(X.n))
    target = list(range(X.n))
    current = X
    deleted = []
    while True:
        w = is_strongly_reducible(current)
        if w is None:
            break
        x, y = alive[w[0]], alive[w[1]]
        deleted.append((x, y))
        target = [y if t == x else t for t in target]
        alive.remove(x)
        current, _ = induced_subimage(X, alive)
    new = {v: i for i, v in enumerate(alive)}
    retraction = VertexMap(X, current, tuple(new[t] for t in target))
    return Reduction(current, tuple(alive), retraction, tuple(deleted))


# -- contraction orderings -------------------------------------------------

@dataclass(frozen=True)
class ContractionOrdering:
    """``order`` deletes points front to back; ``witnesses[i]`` dominates
    ``order[i]`` inside the points not yet deleted."""

    order: tuple[int, ...]
    witnesses: tuple[int, ...]


def _dominator(X: DigitalImage, alive: int, x: int) -> int | None:
    cm = X.closed_masks
    nx_ = cm[x] & alive
    for y in _bits(alive & ~(1 << x)):
        if nx_ & ~cm[y] == 0:
            return y
    return None


def validate_ordering(X: DigitalImage, order: Sequence[int]) -> ContractionOrdering | None:
    """The ordering with its least witnesses if it is a strong contraction
    ordering, else None."""
    if sorted(order) != list(range(X.n)):
        raise ParameterError("ordering must list every vertex once")
    alive = (1 << X.n) - 1
    witnesses = []
    for x in order[:-1]:
        later = alive & ~(1 << x)
        y = _dominator(X, alive, x)
        if y is None or not later >> y & 1:
            return None
        witnesses.append(y)
        alive = later
    return ContractionOrdering(tuple(order), tuple(witnesses))


def strong_contraction_ordering(X: DigitalImage, greedy_only: bool = False
                                ) -> ContractionOrdering | None:
    """Greedy dismantling by least dominated vertex, with memoised
    backtracking over all dominated-vertex choices if greedy stalls."""
    full = (1 << X.n) - 1
    order: list[int] = []
    wit: list[int] = []
    alive = full
    while bin(alive).count("1") > 1:
        for x in _bits(alive):
            y = _dominator(X, alive, x)
            if y is not None:
                order.append(x)
                wit.append(y)
                alive &= ~(1 << x)
                break
        else:
            break
    if bin(alive).count("1") == 1:
        order.append(alive.bit_length() - 1)
        return ContractionOrdering(tuple(order), tuple(wit))
    if greedy_only:
        return None
    log.info("greedy dismantling stalled with %d points left; backtracking", bin(alive).count("1"))
    dead: set[int] = set()

    def rec(alive: int) -> list[tuple[int, int]] | None:
        if bin(alive).count("1") == 1:
            return []
        if alive in dead:
            return None
        for x in _bits(alive):
            y = _dominator(X, alive, x)
            if y is not None:
                rest = rec(alive & ~(1 << x))
                if rest is not None:
                    return [(x, y)] + rest
        dead.add(alive)
        return None

    steps = rec(full)
    if steps is None:
        return None
    last = full
    for x, _ in steps:
        last &= ~(1 << x)
    return ContractionOrdering(tuple(x for x, _ in steps) + (last.bit_length() - 1,),
                               tuple(y for _, y in steps))


def is_strongly_contractible(X: DigitalImage) -> bool:
    return strong_contraction_ordering(X) is not None


def pointed_strongly_contractible(X: DigitalImage, x0: int,
                                  map_budget: int = DEFAULT_MAP_BUDGET,
                                  candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> Verdict:
    """BFS from id_X through maps fixing ``x0``; YES iff the constant map at
    ``x0`` is reached by one-step strong homotopies between pointed maps."""
    if not 0 <= x0 < X.n:
        raise ParameterError(f"basepoint {x0} out of range")
    ident = VertexMap(X, X, tuple(range(X.n)))
    goal = (x0,) * X.n
    return _bfs(ident, lambda v: v == goal, True, x0, map_budget, candidate_budget).verdict


def pointed_profile(X: DigitalImage, map_budget: int = DEFAULT_MAP_BUDGET,
                    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET) -> dict[int, Verdict]:
    """Pointed strong contractibility at every basepoint."""
    return {x: pointed_strongly_contractible(X, x, map_budget, candidate_budget)
            for x in range(X.n)}
