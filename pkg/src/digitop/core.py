"""Finite digital images as simple graphs, continuous maps between them,
normal product adjacencies, canonical forms and text I/O (graph6 and a plain
adjacency-list format).

Vertices are always the indices ``0..n-1``.  Human-facing names such as
``c_3`` live in the optional ``labels`` field and never enter arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ParameterError",
    "Graph6Error",
    "DigitalImage",
    "VertexMap",
    "is_continuous",
    "product_image",
    "interval_image",
    "cycle_image",
    "complete_image",
    "closed_neighborhood",
    "identity_map",
    "constant_map",
    "compose",
    "induced_subimage",
    "relabel",
    "canonical_form",
    "canonical_labeling",
    "is_isomorphic",
    "parse_graph6",
    "write_graph6",
    "parse_adjacency_list",
    "write_adjacency_list",
    "load_image",
    "continuous_maps",
]


class ParameterError(ValueError):
    """Raised when an operation is called outside its precondition."""


class Graph6Error(ValueError):
    """Malformed graph6 input.  ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class DigitalImage:
    """A finite digital image: ``n`` points with a symmetric, irreflexive
    adjacency given as sorted neighbor tuples."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("digital images must have at least one point")
        if len(self.adj) != self.n:
            raise ParameterError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for i, nbrs in enumerate(self.adj):
            if any(not 0 <= j < self.n for j in nbrs):
                raise ParameterError(f"neighbor of {i} out of range")
            if i in nbrs:
                raise ParameterError(f"vertex {i} is adjacent to itself")
            if any(a >= b for a, b in zip(nbrs, nbrs[1:])):
                raise ParameterError(f"neighbors of {i} not strictly increasing")
            for j in nbrs:
                if i not in self.adj[j]:
                    raise ParameterError(f"adjacency not symmetric at ({i}, {j})")
        if self.labels is not None and len(self.labels) != self.n:
            raise ParameterError("labels must have one entry per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "DigitalImage":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for i, j in edges:
            if i == j:
                raise ParameterError(f"loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ParameterError(f"edge ({i}, {j}) out of range for n={n}")
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs),
                   tuple(labels) if labels is not None else None)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "DigitalImage":
        n = len(masks)
        return cls(n, tuple(tuple(j for j in range(n) if m >> j & 1) for m in masks))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open neighborhoods as bitmasks."""
        return tuple(sum(1 << j for j in nbrs) for nbrs in self.adj)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Closed neighborhoods ``N*(x)`` as bitmasks."""
        return tuple(m | (1 << i) for i, m in enumerate(self.masks))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.n) for j in self.adj[i] if i < j)

    def adjacent(self, x: int, y: int) -> bool:
        return bool(self.masks[x] >> y & 1)

    def adjacent_or_equal(self, x: int, y: int) -> bool:
        return bool(self.closed_masks[x] >> y & 1)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.masks[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    def __repr__(self):
        return f"DigitalImage(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class VertexMap:
    """A total function ``dom -> cod``; continuity is checked separately."""

    dom: DigitalImage
    cod: DigitalImage
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.dom.n:
            raise ParameterError(f"map has {len(values)} values for a domain of {self.dom.n} points")
        if any(not 0 <= v < self.cod.n for v in values):
            raise ParameterError("map value outside the codomain")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def image(self) -> set[int]:
        return set(self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.cod.n

    def __repr__(self):
        return f"VertexMap({list(self.values)})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _continuous_values(dom: DigitalImage, cod: DigitalImage, values: Sequence[int]) -> bool:
    cm = cod.closed_masks
    return all(cm[values[i]] >> values[j] & 1 for i, j in dom.edges)


def is_continuous(f: VertexMap) -> bool:
    """True iff adjacent points go to adjacent-or-equal points."""
    return _continuous_values(f.dom, f.cod, f.values)


def interval_image(a: int, b: int) -> DigitalImage:
    """The digital interval ``[a, b]`` with c_1 adjacency."""
    if a > b:
        raise ParameterError(f"empty interval [{a}, {b}]")
    n = b - a + 1
    return DigitalImage.from_edges(n, [(i, i + 1) for i in range(n - 1)],
                                   labels=[str(a + i) for i in range(n)])


def cycle_image(n: int) -> DigitalImage:
    if n < 3:
        raise ParameterError("cycles need at least 3 points")
    return DigitalImage.from_edges(n, [(i, (i + 1) % n) for i in range(n)],
                                   labels=[f"c_{i}" for i in range(n)])


def complete_image(n: int) -> DigitalImage:
    return DigitalImage.from_edges(n, itertools.combinations(range(n), 2))


def product_image(factors: Sequence[DigitalImage], u: int) -> DigitalImage:
    """Cartesian product with the normal product adjacency NP_u.

    Points are encoded row-major: ``(x_0, ..., x_{m-1})`` has index
    ``(..(x_0 * n_1 + x_1) * n_2 ..) + x_{m-1}``.  Two distinct points are
    adjacent when they differ in at most ``u`` coordinates and every differing
    coordinate is an adjacency in its factor.
    """
    if not factors:
        raise ParameterError("product of no factors")
    if not 1 <= u <= len(factors):
        raise ParameterError(f"u={u} must lie in 1..{len(factors)}")
    sizes = [X.n for X in factors]
    points = list(itertools.product(*(range(s) for s in sizes)))
    index = {p: i for i, p in enumerate(points)}
    edges = []
    for p in points:
        closed = [[c] + list(X.adj[c]) for X, c in zip(factors, p)]
        for q in itertools.product(*closed):
            changed = sum(a != b for a, b in zip(p, q))
            if 1 <= changed <= u and index[p] < index[q]:
                edges.append((index[p], index[q]))
    labels = ["(" + ",".join(X.label(c) for X, c in zip(factors, p)) + ")" for p in points]
    return DigitalImage.from_edges(len(points), edges, labels)


def closed_neighborhood(X: DigitalImage, x: int) -> set[int]:
    return set(X.adj[x]) | {x}


def identity_map(X: DigitalImage) -> VertexMap:
    return VertexMap(X, X, tuple(range(X.n)))


def constant_map(X: DigitalImage, Y: DigitalImage, target: int) -> VertexMap:
    return VertexMap(X, Y, (target,) * X.n)


def compose(g: VertexMap, f: VertexMap) -> VertexMap:
    """``g o f``."""
    if f.cod != g.dom:
        raise ParameterError("compose: codomain of f differs from domain of g")
    return VertexMap(f.dom, g.cod, tuple(g.values[v] for v in f.values))


def induced_subimage(X: DigitalImage, keep: Iterable[int]) -> tuple[DigitalImage, dict[int, int]]:
    """Subimage on ``keep`` (in increasing order) plus the old->new table."""
    kept = sorted(set(keep))
    if not kept:
        raise ParameterError("subimage must keep at least one point")
    new = {v: i for i, v in enumerate(kept)}
    edges = [(new[i], new[j]) for i, j in X.edges if i in new and j in new]
    labels = [X.labels[v] for v in kept] if X.labels is not None else None
    return DigitalImage.from_edges(len(kept), edges, labels), new


def relabel(X: DigitalImage, perm: Sequence[int]) -> DigitalImage:
    """Image with vertex ``v`` renamed ``perm[v]``."""
    if sorted(perm) != list(range(X.n)):
        raise ParameterError("relabel needs a permutation of the vertices")
    return DigitalImage.from_edges(X.n, [(perm[i], perm[j]) for i, j in X.edges])


# -- canonical forms -------------------------------------------------------

def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    # Colour refinement; the renumbering only depends on signatures, so it
    # commutes with relabelling.
    ncells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return new
        colors, ncells = new, len(rank)


def _certificate(X: DigitalImage, order: Sequence[int]) -> bytes:
    pos_mask = X.masks
    bits = [pos_mask[order[i]] >> order[j] & 1 for j in range(1, X.n) for i in range(j)]
    return _graph6_bytes(X.n, bits)


def _twins(X: DigitalImage, u: int, v: int) -> bool:
    m = X.masks
    return (m[u] & ~(1 << v)) == (m[v] & ~(1 << u))


def canonical_labeling(X: DigitalImage) -> tuple[bytes, tuple[int, ...]]:
    """Return ``(certificate, order)`` where ``order[p]`` is the vertex placed
    at canonical position ``p``.

    Individualisation-refinement: refine by degree/neighbour-colour
    multisets, then branch over the first non-singleton cell and keep the
    lexicographically least leaf certificate.  Twins (vertices whose
    neighbourhoods agree apart from each other) are interchangeable, so only
    one twin per cell is branched on.
    """
    best: list = [None, None]
    adj = X.adj

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == X.n:
            order = [0] * X.n
            for v, c in enumerate(colors):
                order[c] = v
            cert = _certificate(X, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, tuple(order)
            return
        target = min(c for c, vs in cells.items() if len(vs) > 1)
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(X, u, v) for u in tried):
                continue
            tried.append(v)
            search([2 * c + (c == target and w != v) for w, c in enumerate(colors)])

    search([0] * X.n)
    return best[0], best[1]


def canonical_form(X: DigitalImage) -> bytes:
    """Byte string equal for two images iff they are isomorphic."""
    return canonical_labeling(X)[0]


def is_isomorphic(X: DigitalImage, Y: DigitalImage) -> bool:
    if X.n != Y.n or len(X.edges) != len(Y.edges):
        return False
    return canonical_form(X) == canonical_form(Y)


# -- graph6 ----------------------------------------------------------------

def _size_header(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [(n >> s & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ParameterError("graph too large for graph6")


def _graph6_bytes(n: int, bits: Sequence[int]) -> bytes:
    out = bytearray(_size_header(n))
    for k in range(0, len(bits), 6):
        chunk = list(bits[k:k + 6]) + [0] * (6 - len(bits[k:k + 6]))
        val = 0
        for b in chunk:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out)


def write_graph6(X: DigitalImage) -> str:
    """graph6 encoding (no header, no newline) keeping the vertex order."""
    return _certificate(X, range(X.n)).decode("ascii")


def parse_graph6(line: str) -> DigitalImage:
    s = line.strip()
    base = 0
    if s.startswith(">>graph6<<"):
        base = len(">>graph6<<")
        s = s[base:]
    data = s.encode("ascii", errors="replace")
    for i, ch in enumerate(data):
        if not 63 <= ch <= 126:
            raise Graph6Error(f"byte {ch!r} outside 63..126", base + i)
    if not data:
        raise Graph6Error("empty graph6 string", base)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated size header", base + len(data))
        n, pos = 0, 8
        for ch in data[2:8]:
            n = (n << 6) | (ch - 63)
    else:
        if len(data) < 4:
            raise Graph6Error("truncated size header", base + len(data))
        n, pos = 0, 4
        for ch in data[1:4]:
            n = (n << 6) | (ch - 63)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, found {len(body)}",
                          base + pos + min(len(body), need))
    if n == 0:
        raise Graph6Error("graph6 string encodes the empty graph", base)
    bits = []
    for ch in body:
        v = ch - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", base + len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return DigitalImage.from_edges(n, edges)


# -- adjacency-list text ---------------------------------------------------

def parse_adjacency_list(text: str) -> DigitalImage:
    """First non-comment line ``n``; then one ``i j`` pair per edge."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParameterError("adjacency list is empty")
    lineno, first = rows[0]
    if len(first) != 1 or not first[0].isdigit():
        raise ParameterError(f"line {lineno}: expected the vertex count")
    n = int(first[0])
    edges = []
    for lineno, parts in rows[1:]:
        if len(parts) != 2:
            raise ParameterError(f"line {lineno}: expected 'i j'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParameterError(f"line {lineno}: non-integer vertex") from None
        if not (0 <= i < n and 0 <= j < n):
            raise ParameterError(f"line {lineno}: edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise ParameterError(f"line {lineno}: loop at vertex {i}")
        edges.append((i, j))
    try:
        return DigitalImage.from_edges(n, edges)
    except ParameterError as exc:
        raise ParameterError(f"adjacency list: {exc}") from None


def write_adjacency_list(X: DigitalImage) -> str:
    return "\n".join([str(X.n)] + [f"{i} {j}" for i, j in X.edges]) + "\n"


def load_image(path) -> DigitalImage:
    """Read an image file, adjacency-list or single-line graph6."""
    with open(path) as fh:
        text = fh.read()
    body = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    body = [ln for ln in body if ln]
    if body and body[0].isdigit():
        return parse_adjacency_list(text)
    if len(body) != 1:
        raise ParameterError(f"{path}: expected one graph6 line or an adjacency list")
    return parse_graph6(body[0])


def continuous_maps(X: DigitalImage, Y: DigitalImage) -> Iterator[VertexMap]:
    """All continuous maps ``X -> Y`` in lexicographic order of values."""
    for vals in _continuous_value_tuples(X, Y, [(1 << Y.n) - 1] * X.n):
        yield VertexMap(X, Y, vals)


def _continuous_value_tuples(X: DigitalImage, Y: DigitalImage,
                             candidates: Sequence[int]) -> Iterator[tuple[int, ...]]:
    # Backtracking in vertex order; ``candidates[x]`` restricts g(x).
    n = X.n
    earlier = [[w for w in X.adj[x] if w < x] for x in range(n)]
    cm = Y.closed_masks
    vals = [0] * n

    def rec(x: int):
        if x == n:
            yield tuple(vals)
            return
        allowed = candidates[x]
        for w in earlier[x]:
            allowed &= cm[vals[w]]
        for y in _bits(allowed):
            vals[x] = y
            yield from rec(x + 1)

    yield from rec(0)
