"""Integer simplicial homology of the clique complex of a digital image.

A q-simplex is a set of q+1 mutually adjacent points, stored as a strictly
increasing vertex tuple.  Homology is cycles modulo boundaries, computed via
Smith normal form, and each ``HomologyPresentation`` carries explicit
generators plus a projection from cycles to coordinates in
``Z^betti + Z/d_1 + ... + Z/d_t`` so that induced maps can be written down
as integer matrices and compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import DigitalImage, ParameterError, VertexMap, _bits, is_continuous
from .homotopy import one_step_strong_homotopic
from .intmatrix import IntegerMatrix, smith_decomposition

__all__ = [
    "simplices",
    "ChainComplex",
    "chain_complex",
    "boundary_matrix",
    "HomologyPresentation",
    "HomologyMap",
    "homology",
    "induced_chain_map",
    "induced_homology_map",
    "prism_operator",
    "homology_maps_equal",
    "sort_with_sign",
]


def simplices(X: DigitalImage, q: int) -> list[tuple[int, ...]]:
    """All (q+1)-cliques of X as sorted tuples, in lexicographic order."""
    if q < 0:
        raise ParameterError("simplex dimension must be nonnegative")
    out: list[tuple[int, ...]] = []
    masks = X.masks

    def grow(prefix: list[int], common: int):
        if len(prefix) == q + 1:
            out.append(tuple(prefix))
            return
        for v in _bits(common):
            prefix.append(v)
            grow(prefix, common & masks[v] & ~((1 << (v + 1)) - 1))
            prefix.pop()

    grow([], (1 << X.n) - 1)
    return out


def sort_with_sign(verts) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 when a
    vertex repeats (degenerate simplex)."""
    verts = tuple(verts)
    if len(set(verts)) < len(verts):
        return 0, ()
    inversions = sum(1 for i in range(len(verts)) for j in range(i + 1, len(verts))
                     if verts[i] > verts[j])
    return (-1) ** inversions, tuple(sorted(verts))


class ChainComplex:
    """Bases and boundary matrices of the clique complex of ``image``."""

    def __init__(self, image: DigitalImage):
        self.image = image
        self.basis: list[list[tuple[int, ...]]] = []
        q = 0
        while True:
            layer = simplices(image, q)
            if not layer:
                break
            self.basis.append(layer)
            q += 1
        self._index = [{s: i for i, s in enumerate(layer)} for layer in self.basis]
        self._boundary: dict[int, IntegerMatrix] = {}

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    def rank(self, q: int) -> int:
        return len(self.basis[q]) if 0 <= q < len(self.basis) else 0

    def simplices(self, q: int) -> list[tuple[int, ...]]:
        return self.basis[q] if 0 <= q < len(self.basis) else []

    def index(self, q: int, simplex: tuple[int, ...]) -> int:
        try:
            return self._index[q][simplex]
        except (IndexError, KeyError):
            raise ParameterError(f"{simplex} is not a {q}-simplex of the image") from None

    def boundary(self, q: int) -> IntegerMatrix:
        """Matrix of ``C_q -> C_{q-1}``; ``q = 0`` gives a 0-row matrix."""
        if q not in self._boundary:
            rows, cols = self.rank(q - 1), self.rank(q)
            M = [[0] * cols for _ in range(rows)]
            if q > 0:
                for j, s in enumerate(self.simplices(q)):
                    for i in range(q + 1):
                        face = s[:i] + s[i + 1:]
                        M[self._index[q - 1][face]][j] += (-1) ** i
            self._boundary[q] = IntegerMatrix.from_rows(M, cols)
        return self._boundary[q]


@lru_cache(maxsize=256)
def chain_complex(X: DigitalImage) -> ChainComplex:
    return ChainComplex(X)


def boundary_matrix(C: ChainComplex | DigitalImage, q: int) -> IntegerMatrix:
    if isinstance(C, DigitalImage):
        C = chain_complex(C)
    return C.boundary(q)


@dataclass(frozen=True)
class HomologyPresentation:
    """``H_q`` as ``Z^betti + (+) Z/d_i``.

    ``generators`` has one column per generator (free ones first, then
    torsion ones) written in the chain basis of ``C_q``; ``projection`` sends
    a cycle's chain coordinates to its coordinates on those generators.
    Torsion coordinates are only meaningful modulo their divisor.
    """

    image: DigitalImage
    q: int
    betti: int
    torsion: tuple[int, ...]
    generators: IntegerMatrix
    projection: IntegerMatrix

    @property
    def moduli(self) -> tuple[int, ...]:
        """Modulus per coordinate, 0 for free coordinates."""
        return (0,) * self.betti + self.torsion

    def reduce(self, coords) -> tuple[int, ...]:
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def coordinates(self, chain) -> tuple[int, ...]:
        """Quotient coordinates of a q-cycle given in chain coordinates."""
        return self.reduce(self.projection.apply(list(chain)))

    def is_boundary(self, chain) -> bool:
        return all(c == 0 for c in self.coordinates(chain))

    def to_json(self) -> dict:
        return {"q": self.q, "betti": self.betti, "torsion": list(self.torsion)}


def _empty(rows: int, cols: int) -> IntegerMatrix:
    return IntegerMatrix.zeros(rows, cols)


@lru_cache(maxsize=1024)
def homology(X: DigitalImage, q: int) -> HomologyPresentation:
    """Cycles of ``C_q`` modulo boundaries of ``C_{q+1}``."""
    if q < 0:
        raise ParameterError("homology dimension must be nonnegative")
    C = chain_complex(X)
    dim = C.rank(q)
    if dim == 0:
        return HomologyPresentation(X, q, 0, (), _empty(0, 0), _empty(0, 0))
    outer = smith_decomposition(C.boundary(q))
    r = outer.rank
    z = dim - r
    to_kernel = IntegerMatrix.from_rows(outer.V_inv.tolist()[r:], dim)   # z x dim
    kernel = IntegerMatrix.from_rows([row[r:] for row in outer.V.tolist()], z)  # dim x z
    rel = to_kernel @ C.boundary(q + 1)                                   # z x b
    inner = smith_decomposition(rel)
    diag = inner.diagonal
    s = inner.rank
    free = list(range(s, z))
    tors = [i for i in range(s) if diag[i] > 1]
    keep = free + tors
    proj_full = (inner.U @ to_kernel).tolist()
    gens_full = (kernel @ inner.U_inv).tolist()
    projection = IntegerMatrix.from_rows([proj_full[i] for i in keep], dim)
    generators = IntegerMatrix.from_rows([[row[i] for i in keep] for row in gens_full], len(keep))
    return HomologyPresentation(X, q, len(free), tuple(diag[i] for i in tors),
                                generators, projection)


def induced_chain_map(f: VertexMap, q: int) -> IntegerMatrix:
    """Matrix of ``f_#: C_q(dom) -> C_q(cod)``; degenerate images give 0."""
    if not is_continuous(f):
        raise ParameterError("induced_chain_map needs a continuous map")
    CX, CY = chain_complex(f.dom), chain_complex(f.cod)
    M = [[0] * CX.rank(q) for _ in range(CY.rank(q))]
    for j, s in enumerate(CX.simplices(q)):
        sign, img = sort_with_sign(f.values[v] for v in s)
        if sign:
            M[CY.index(q, img)][j] += sign
    return IntegerMatrix.from_rows(M, CX.rank(q))


@dataclass(frozen=True)
class HomologyMap:
    """Homomorphism between two presentations, as a matrix on quotient
    coordinates (rows reduced modulo the target torsion)."""

    source: HomologyPresentation
    target: HomologyPresentation
    matrix: IntegerMatrix

    def __call__(self, coords) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(list(coords)))

    def compose(self, first: "HomologyMap") -> "HomologyMap":
        """``self o first``."""
        if first.target != self.source:
            raise ParameterError("homology maps do not compose")
        prod = self.matrix @ first.matrix
        return HomologyMap(first.source, self.target, _reduce_rows(prod, self.target))

    def scalar(self) -> int:
        """The integer k when this is multiplication by k on a group Z."""
        if self.source.moduli != (0,) or self.target.moduli != (0,):
            raise ParameterError("scalar() needs source and target isomorphic to Z")
        return self.matrix[0, 0]


def _reduce_rows(M: IntegerMatrix, target: HomologyPresentation) -> IntegerMatrix:
    rows = [[v % m if m else v for v in row] for row, m in zip(M.tolist(), target.moduli)]
    return IntegerMatrix.from_rows(rows, M.cols)


def induced_homology_map(f: VertexMap, q: int) -> HomologyMap:
    src, tgt = homology(f.dom, q), homology(f.cod, q)
    chain = induced_chain_map(f, q)
    cols = []
    for j in range(src.generators.cols):
        cols.append(tgt.coordinates(chain.apply(src.generators.column(j))))
    rows = [[c[i] for c in cols] for i in range(len(tgt.moduli))]
    return HomologyMap(src, tgt, IntegerMatrix.from_rows(rows, len(cols)))


def homology_maps_equal(A: HomologyMap, B: HomologyMap) -> bool:
    """Equality on every generator, modulo the target torsion."""
    if A.source != B.source or A.target != B.target:
        raise ParameterError("homology maps between different presentations")
    return _reduce_rows(A.matrix, A.target) == _reduce_rows(B.matrix, B.target)


def prism_operator(f: VertexMap, g: VertexMap, q: int, strict: bool = True) -> IntegerMatrix:
    """Chain homotopy ``P: C_q(dom) -> C_{q+1}(cod)`` between f_# and g_#.

    ``P<x_0..x_q> = sum_j (-1)^j <f(x_0)..f(x_j), g(x_j)..g(x_q)>`` with
    repeated points giving 0.  Needs f, g strongly homotopic in one step;
    with ``strict`` they must also differ at no more than one point.
    """
    if not one_step_strong_homotopic(f, g):
        raise ParameterError("prism operator needs f and g strongly homotopic in one step")
    if strict and sum(a != b for a, b in zip(f.values, g.values)) > 1:
        raise ParameterError("prism operator (strict) needs f and g to differ at one point at most")
    CX, CY = chain_complex(f.dom), chain_complex(f.cod)
    M = [[0] * CX.rank(q) for _ in range(CY.rank(q + 1))]
    for col, s in enumerate(CX.simplices(q)):
        for j in range(q + 1):
            pts = [f.values[v] for v in s[:j + 1]] + [g.values[v] for v in s[j:]]
            sign, img = sort_with_sign(pts)
            if sign:
                M[CY.index(q + 1, img)][col] += (-1) ** j * sign
    return IntegerMatrix.from_rows(M, CX.rank(q))
