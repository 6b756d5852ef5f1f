"""Scorecard of the reproducible claims: census counts, the small catalog,
homology of cycles, rigidity of the identity on cycles, the prism identity,
strong-homotopy invariance of induced maps, the C_n classification, the
pointed counterexample and a few randomized property suites.

Each check returns ``(passed, detail)``; checks needing an ingested corpus
return ``None`` for ``passed`` when it is absent.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import catalog
from .core import (
    DigitalImage,
    VertexMap,
    _bits,
    canonical_form,
    constant_map,
    continuous_maps,
    cycle_image,
    identity_map,
    is_continuous,
    is_isomorphic,
    parse_graph6,
    write_graph6,
)
from .cycles import CycleTag, classify_cycle_selfmap, expected_induced
from .gallery import POINTED_ORDER_WITNESSES, irreducible_small_images, pointed_counterexample
from .homology import (
    chain_complex,
    homology,
    homology_maps_equal,
    induced_chain_map,
    induced_homology_map,
    prism_operator,
)
from .homotopy import (
    Homotopy,
    Verdict,
    _neighbor_candidates,
    homotopic,
    homotopy_class,
    homotopy_neighbors,
    is_punctuated,
    is_strongly_contractible,
    is_valid_homotopy,
    is_valid_strong_homotopy,
    pointed_strongly_contractible,
    strong_contraction_ordering,
    strong_neighbors,
    validate_ordering,
)
from .intmatrix import IntegerMatrix, smith_decomposition

D_TABLE = {1: 1, 2: 0, 3: 0, 4: 1, 5: 2, 6: 9, 7: 46, 8: 507, 9: 11800}
C_TABLE = {1: 1, 2: 0, 3: 0, 4: 0, 5: 1, 6: 1, 7: 3}


@dataclass
class CheckResult:
    name: str
    passed: bool | None
    detail: str
    seconds: float

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "SKIP"}[self.passed]


# -- helpers shared with the test-suite ------------------------------------

def all_graphs(n: int) -> list[DigitalImage]:
    """Every graph on ``n`` points up to isomorphism (brute force, n <= 5)."""
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[bytes, DigitalImage] = {}
    for bits in range(1 << len(pairs)):
        X = DigitalImage.from_edges(n, [p for i, p in enumerate(pairs) if bits >> i & 1])
        seen.setdefault(canonical_form(X), X)
    return [seen[k] for k in sorted(seen)]


def random_connected_image(n: int, rng: random.Random, p: float = 0.5) -> DigitalImage:
    while True:
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
        X = DigitalImage.from_edges(n, edges)
        if X.is_connected():
            return X


def random_continuous_map(X: DigitalImage, Y: DigitalImage, rng: random.Random) -> VertexMap:
    """A continuous map found by randomized backtracking (not uniform)."""
    cm = Y.closed_masks
    vals = [0] * X.n
    order = list(range(X.n))
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}

    def rec(i: int) -> bool:
        if i == X.n:
            return True
        x = order[i]
        allowed = (1 << Y.n) - 1
        for w in X.adj[x]:
            if pos[w] < i:
                allowed &= cm[vals[w]]
        cands = list(_bits(allowed))
        rng.shuffle(cands)
        for y in cands:
            vals[x] = y
            if rec(i + 1):
                return True
        return False

    rec(0)
    return VertexMap(X, Y, tuple(vals))


def prism_identity_holds(f: VertexMap, g: VertexMap, strict: bool = True) -> bool:
    """``d P = g_# - f_# - P d`` in every dimension of the domain complex."""
    CX, CY = chain_complex(f.dom), chain_complex(f.cod)
    for q in range(CX.top + 1):
        P = prism_operator(f, g, q, strict)
        lhs = CY.boundary(q + 1) @ P
        rhs = induced_chain_map(g, q) - induced_chain_map(f, q)
        if q > 0:
            rhs = rhs - prism_operator(f, g, q - 1, strict) @ CX.boundary(q)
        if lhs != rhs:
            return False
    return True


def punctuated_pairs(X: DigitalImage):
    """All (f, g) of continuous selfmaps with g != f at exactly one point
    and g strongly homotopic to f in one step."""
    for f in continuous_maps(X, X):
        cands = _neighbor_candidates(f, strong=True)
        for x in range(X.n):
            for y in _bits(cands[x]):
                if y == f.values[x]:
                    continue
                vals = list(f.values)
                vals[x] = y
                g = VertexMap(X, X, tuple(vals))
                if is_continuous(g):
                    yield f, g


def map_classes(X: DigitalImage, strong: bool) -> list[set[VertexMap]]:
    """Partition of the continuous selfmaps of X into (strong) homotopy
    classes."""
    remaining = set(continuous_maps(X, X))
    classes = []
    while remaining:
        f = min(remaining, key=lambda m: m.values)
        cls = homotopy_class(f, strong=strong)
        classes.append(cls)
        remaining -= cls
    return classes


# -- the checks ------------------------------------------------------------

def check_census_d(corpus_dir=None) -> tuple[bool | None, str]:
    t0 = time.perf_counter()
    got = {}
    for n in range(1, 8):
        rep, _ = catalog.build_census(catalog.generate_connected_graphs(n), reducible=False)
        got[n] = rep.d(n)
    elapsed = time.perf_counter() - t0
    ok = all(got[n] == D_TABLE[n] for n in got) and elapsed <= 120
    detail = f"d(1..7)={[got[n] for n in range(1, 8)]} in {elapsed:.1f}s"
    for n in (8, 9):
        path = catalog.corpus_path(n, corpus_dir)
        if path is None:
            detail += f"; n={n} skipped (no corpus)"
            continue
        t1 = time.perf_counter()
        rep, _ = catalog.build_census(catalog.ingest_graph6(path), reducible=False,
                                      provenance="ingested")
        dt = time.perf_counter() - t1
        ok = ok and rep.d(n) == D_TABLE[n] and dt <= 600
        detail += f"; d({n})={rep.d(n)} in {dt:.1f}s"
    return ok, detail


def check_census_c() -> tuple[bool, str]:
    got = {}
    for n in range(1, 8):
        rep, _ = catalog.build_census(catalog.generate_connected_graphs(n), reducible=True)
        got[n] = rep.c(n)
    ok = all(got[n] == C_TABLE[n] for n in got)
    return ok, f"c(1..7)={[got[n] for n in range(1, 8)]}"


def check_small_catalog() -> tuple[bool, str]:
    gallery = irreducible_small_images()
    counts = []
    matched = set()
    ok = True
    for n in range(1, 7):
        _, entries = catalog.build_census(catalog.generate_connected_graphs(n), reducible=False)
        counts.append(len(entries))
        for e in entries:
            X = parse_graph6(e.graph6)
            hits = [k for k, G in gallery.items() if is_isomorphic(X, G)]
            ok &= len(hits) == 1
            matched.update(hits)
    ok &= counts == [1, 0, 0, 1, 2, 9]
    ok &= {"C4", "C5", "C6", "K3,3"} <= matched and matched == set(gallery)
    return ok, f"survivor counts per n={counts}; matched {len(matched)}/{len(gallery)} reference images"


def check_cycle_homology() -> tuple[bool, str]:
    ok = True
    for n in range(4, 11):
        C = cycle_image(n)
        got = [(homology(C, q).betti, homology(C, q).torsion) for q in range(4)]
        ok &= got == [(1, ()), (1, ()), (0, ()), (0, ())]
    return ok, "H_q(C_n) = Z, Z, 0, 0 for n = 4..10"


def check_strong_rigidity() -> tuple[bool, str]:
    ok = True
    for n in range(4, 8):
        ident = identity_map(cycle_image(n))
        ok &= strong_neighbors(ident) == {ident}
        ok &= homotopy_class(ident, strong=True) == {ident}
    C4 = cycle_image(4)
    ok &= homotopic(identity_map(C4), constant_map(C4, C4, 0)) is Verdict.YES
    return ok, "strong class of id_{C_n} is {id} for n=4..7; id_{C_4} ~ const"


def check_prism(seed: int = 0, random_pairs: int = 1000) -> tuple[bool, str]:
    ok = True
    exhaustive = 0
    for n in range(1, 5):
        for X in catalog.generate_connected_graphs(n):
            for f, g in punctuated_pairs(X):
                exhaustive += 1
                ok &= prism_identity_holds(f, g)
    rng = random.Random(seed)
    done = 0
    while done < random_pairs:
        X = random_connected_image(rng.choice((5, 6)), rng)
        f = random_continuous_map(X, X, rng)
        x = rng.randrange(X.n)
        cands = [y for y in _bits(_neighbor_candidates(f, strong=True)[x]) if y != f.values[x]]
        rng.shuffle(cands)
        for y in cands:
            vals = list(f.values)
            vals[x] = y
            g = VertexMap(X, X, tuple(vals))
            if is_continuous(g):
                ok &= prism_identity_holds(f, g)
                done += 1
                break
    return ok, f"{exhaustive} exhaustive pairs (n<=4), {done} random pairs (n=5,6)"


def check_strong_invariance() -> tuple[bool, str]:
    ok = True
    pairs = 0
    for n in range(1, 5):
        for X in all_graphs(n):
            for cls in map_classes(X, strong=True):
                rep = min(cls, key=lambda m: m.values)
                for q in range(3):
                    ref = induced_homology_map(rep, q)
                    for f in cls:
                        pairs += 1
                        ok &= homology_maps_equal(induced_homology_map(f, q), ref)
    C4 = cycle_image(4)
    ident, const = identity_map(C4), constant_map(C4, C4, 0)
    ok &= not homology_maps_equal(induced_homology_map(ident, 1), induced_homology_map(const, 1))
    return ok, f"{pairs} class-member comparisons agree; id_* != c_* on H_1(C_4)"


def check_cycle_maps() -> tuple[bool, str]:
    ok = True
    info = []
    for n in (5, 6):
        C = cycle_image(n)
        maps = list(continuous_maps(C, C))
        classes = map_classes(C, strong=False)
        cls_of = {f: i for i, cls in enumerate(classes) for f in cls}
        sig = {}
        tags = {CycleTag.IDENTITY: 0, CycleTag.FLIP: 0, CycleTag.CONSTANT: 0}
        for f in maps:
            tag = classify_cycle_selfmap(f).tag
            tags[tag] += 1
            h1 = induced_homology_map(f, 1).scalar()
            ok &= h1 == expected_induced(f, 1)
            ok &= induced_homology_map(f, 0).scalar() == expected_induced(f, 0) == 1
            sig[f] = tuple(induced_homology_map(f, q).matrix for q in range(3))
        for f, g in itertools.combinations(maps, 2):
            ok &= (sig[f] == sig[g]) == (cls_of[f] == cls_of[g])
        ok &= len(classes) == 3
        info.append(f"C_{n}: {len(maps)} maps, classes {[len(c) for c in classes]}")
    return ok, "; ".join(info)


def check_pointed_example() -> tuple[bool, str]:
    X = pointed_counterexample()
    ordering = validate_ordering(X, list(range(8)))
    ok = ordering is not None and strong_contraction_ordering(X) is not None
    alive = (1 << 8) - 1
    cm = X.closed_masks
    for i, j in POINTED_ORDER_WITNESSES:
        x, y = i - 1, j - 1
        ok &= (cm[x] & alive) & ~(cm[y] & alive) == 0
        alive &= ~(1 << x)
    ident = identity_map(X)
    moved = [f for f in strong_neighbors(ident) if f != ident]
    ok &= bool(moved) and all(f.values[0] != 0 for f in moved)
    ok &= pointed_strongly_contractible(X, 0) is Verdict.NO
    ok &= is_strongly_contractible(X)
    return ok, f"ordering valid, {len(moved)} non-identity strong neighbours all move x_1"


def check_properties(seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    ok = True
    strong_count = drawn = 0
    while strong_count < 1000:
        drawn += 1
        X = random_connected_image(rng.randint(1, 5), rng)
        f = random_continuous_map(X, X, rng)
        stages = [f]
        for _ in range(rng.randint(0, 4)):
            cur = stages[-1]
            if rng.random() < 0.2:
                nxt = random_continuous_map(X, X, rng)
            else:
                pool = sorted(strong_neighbors(cur) if rng.random() < 0.5 else
                              homotopy_neighbors(cur), key=lambda m: m.values)
                nxt = rng.choice(pool)
            stages.append(nxt)
        H = Homotopy(X, X, tuple(stages))
        if is_valid_strong_homotopy(H):
            strong_count += 1
            ok &= is_valid_homotopy(H)
    for n in range(1, 7):
        for X in catalog.generate_connected_graphs(n):
            C = chain_complex(X)
            for q in range(1, C.top + 2):
                ok &= (C.boundary(q) @ C.boundary(q + 1)).is_zero()
    for _ in range(1000):
        m, k = rng.randint(1, 8), rng.randint(1, 8)
        M = IntegerMatrix.from_rows([[rng.randint(-9, 9) for _ in range(k)] for _ in range(m)])
        dec = smith_decomposition(M)
        diag = dec.diagonal
        ok &= dec.U @ M @ dec.V == dec.D
        ok &= abs(dec.U.determinant()) == 1 and abs(dec.V.determinant()) == 1
        ok &= all(diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0
                  for i in range(len(diag) - 1))
        ok &= all(dec.D[i, j] == 0 for i in range(m) for j in range(k) if i != j)
    punct = 0
    for n in range(1, 4):
        for X in all_graphs(n):
            maps = list(continuous_maps(X, X))
            for a, b, c in itertools.product(maps, repeat=3):
                H = Homotopy(X, X, (a, b, c))
                if is_punctuated(H) and is_valid_homotopy(H):
                    punct += 1
                    ok &= is_valid_strong_homotopy(H)
    g6 = 0
    for n in range(1, 8):
        for X in catalog.generate_connected_graphs(n):
            g6 += 1
            Y = parse_graph6(write_graph6(X))
            ok &= Y == X
    return ok, (f"{strong_count} strong homotopies (of {drawn} drawn) all ordinary; d∘d=0 on n<=6; "
                f"1000 SNFs; {punct} punctuated homotopies strong; {g6} graph6 round trips")


CHECKS: list[tuple[str, Callable]] = [
    ("1 census d(n)", check_census_d),
    ("2 census c(n)", check_census_c),
    ("3 small catalog", check_small_catalog),
    ("4 H_q(C_n)", check_cycle_homology),
    ("5 strong rigidity of id on C_n", check_strong_rigidity),
    ("6 prism identity", check_prism),
    ("7 strong invariance of f_*", check_strong_invariance),
    ("8 C_n induced maps and Hopf", check_cycle_maps),
    ("9 pointed counterexample", check_pointed_example),
    ("10 property suites", check_properties),
]


def run_all(corpus_dir=None, seed: int = 0, only=None) -> list[CheckResult]:
    """Run the checks in order; ``only`` restricts to 1-based item numbers."""
    out = []
    for i, (name, fn) in enumerate(CHECKS, 1):
        if only is not None and i not in only:
            continue
        t0 = time.perf_counter()
        if fn is check_census_d:
            passed, detail = fn(corpus_dir)
        elif fn in (check_prism, check_properties):
            passed, detail = fn(seed)
        else:
            passed, detail = fn()
        out.append(CheckResult(name, passed, detail, time.perf_counter() - t0))
    return out
