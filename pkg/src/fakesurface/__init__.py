"""Cellular fake surfaces: validation, homology, embedded disks, reduction to a point,
and the balanced presentations they carry."""
from .surface import (FakeSurface, ParseError, canonical_form, euler_characteristic,
                      parse_catalog, parse_surface, serialize_surface, validate_surface)
from .homology import HomologySummary, homology_summary, is_acyclic, smith_normal_form
from .disks import bundle_type, doubled_chain, embedded_disks, neighborhood_sequences
from .presentation import (ACMove, GroupPresentation, apply_ac_move, bounded_trivialization_search,
                           collapse_tree, eliminate_generator, spanning_trees)
from .reduction import POINT, reduce_to_point

__version__ = "0.1.0"
