"""Named images: the irreducible images on at most six points, the
eight-point pointed counterexample, and a small spec-string parser used by
the CLI (``cycle:5``, ``complete:4``, ``interval:0:3``, ``g6:Ch``, ...)."""
from __future__ import annotations

from .core import (
    DigitalImage,
    ParameterError,
    complete_image,
    cycle_image,
    interval_image,
    parse_graph6,
    product_image,
)

__all__ = [
    "point_image",
    "pointed_counterexample",
    "POINTED_ORDER_WITNESSES",
    "irreducible_small_images",
    "named_image",
]


def point_image() -> DigitalImage:
    return DigitalImage(1, ((),))


def _build(n, edges, labels=None):
    return DigitalImage.from_edges(n, edges, labels)


# Points x_1..x_8 become vertices 0..7: an outer square x_4 x_1 x_2 x_3, an
# inner square x_7 x_8 x_5 x_6, the diagonal x_4 x_7 x_5 x_2 and six
# cross edges.
_POINTED_EDGES_1BASED = [
    (1, 4), (1, 2), (2, 3), (3, 4),
    (7, 8), (8, 5), (5, 6), (6, 7),
    (4, 7), (7, 5), (5, 2),
    (3, 6), (8, 1), (4, 6), (3, 5), (2, 8), (4, 8), (7, 1),
]

# (i, j): N*(x_i) <= N*(x_j) inside {x_i, ..., x_8}, 1-based.
POINTED_ORDER_WITNESSES = ((1, 8), (2, 5), (3, 6), (4, 7), (5, 7), (6, 7), (7, 8))


def pointed_counterexample() -> DigitalImage:
    """Eight points, strongly contractible, yet not pointed strongly
    contractible at ``x_1`` (vertex 0)."""
    return _build(8, [(a - 1, b - 1) for a, b in _POINTED_EDGES_1BASED],
                  [f"x_{i}" for i in range(1, 9)])


def irreducible_small_images() -> dict[str, DigitalImage]:
    """Connected images on <= 6 points with no dominated point, one per
    isomorphism class."""
    imgs = {
        "point": point_image(),
        "C4": cycle_image(4),
        "C5": cycle_image(5),
        # square a b c d with e joined to the opposite corners b, d
        "C4+diagonal-path": _build(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 3)]),
        "C6": cycle_image(6),
        # pentagon 0..4 plus 5 joined to both neighbours of 0
        "C5+twin": _build(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 1), (5, 4)]),
        # pentagon 0..4 plus 5 joined to 0, 2, 3
        "C5+hub3": _build(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 2), (5, 3)]),
        "K2,4": _build(6, [(a, b) for a in (0, 1) for b in (2, 3, 4, 5)]),
        # square 0 1 2 3; 4 joined to 0, 1; 5 joined to 2, 3; and 4 - 5
        "C4+bridge": _build(6, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1),
                                (5, 2), (5, 3), (4, 5)]),
        # square A B C D; o joined to A and C; path B - w - o
        "C4+spoke": _build(6, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 2),
                               (1, 5), (5, 4)]),
        "octahedron": _build(6, [(a, b) for a in range(6) for b in range(a + 1, 6)
                                 if b - a != 3]),
        "ladder3": product_image([interval_image(0, 1), interval_image(0, 2)], 1),
        "K3,3": _build(6, [(a, b) for a in (0, 1, 2) for b in (3, 4, 5)]),
    }
    return imgs


def named_image(spec: str) -> DigitalImage:
    """Parse ``kind[:args]``: ``point``, ``cycle:N``, ``complete:N``,
    ``interval:A:B``, ``path:N``, ``pointed``, ``g6:STRING`` or one of the
    keys of :func:`irreducible_small_images`."""
    kind, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if kind == "point":
            return point_image()
        if kind == "cycle":
            return cycle_image(int(args[0]))
        if kind == "complete":
            return complete_image(int(args[0]))
        if kind == "interval":
            return interval_image(int(args[0]), int(args[1]))
        if kind == "path":
            return interval_image(0, int(args[0]) - 1)
        if kind == "pointed":
            return pointed_counterexample()
        if kind == "g6":
            return parse_graph6(rest)
    except (IndexError, ValueError) as exc:
        raise ParameterError(f"bad image spec {spec!r}: {exc}") from None
    small = irreducible_small_images()
    if spec in small:
        return small[spec]
    raise ParameterError(f"unknown image spec {spec!r}")
