"""Digital images as simple graphs: continuous maps, (strong) homotopy,
reductions to cores, and clique-complex homology."""
from __future__ import annotations

from .core import (
    DigitalImage,
    Graph6Error,
    ParameterError,
    VertexMap,
    canonical_form,
    closed_neighborhood,
    complete_image,
    compose,
    constant_map,
    continuous_maps,
    cycle_image,
    identity_map,
    interval_image,
    is_continuous,
    is_isomorphic,
    load_image,
    parse_adjacency_list,
    parse_graph6,
    product_image,
    write_graph6,
)
from .homology import homology, induced_chain_map, induced_homology_map, prism_operator
from .homotopy import (
    Homotopy,
    Verdict,
    concatenate,
    find_homotopy,
    homotopic,
    is_reducible,
    is_strongly_contractible,
    is_strongly_reducible,
    is_valid_homotopy,
    is_valid_strong_homotopy,
    one_step_homotopic,
    one_step_strong_homotopic,
    pointed_strongly_contractible,
    puncturate_one_step,
    reverse,
    strong_contraction_ordering,
    strong_core,
    strongly_homotopic,
)
from .intmatrix import IntegerMatrix, smith_normal_form

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
__version__ = "0.1.0"
