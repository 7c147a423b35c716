"""foldwidth: fold diagrams of generic maps from closed surfaces to the plane."""

from .diagram import (
    CROSSING,
    CUSP,
    OUTER,
    SMOOTH,
    CanonicalCode,
    Face,
    FoldComponent,
    FoldDiagram,
    MapComponent,
    Placement,
    Vertex,
    build_diagram,
    canonical_code,
    fold_components,
    global_faces,
    mirror,
    relabel,
    strip_smooth,
)
from .labeling import WidthLabeling, check_local_patterns, enumerate_labelings, validate_labeling, width_stats
from .invariants import (
    DiagramInvariants,
    compute_invariants,
    euler_char_stratified,
    rotation_degree_numeric,
    thom_parity,
)
from .geometry import Realization, realize, trace_realization
from .assembly import (
    CombinatorialSurface,
    SurfaceAssembly,
    assembly_summary,
    build_surface,
    enumerate_assemblies,
)
from .generators import (
    BraidSpec,
    RibbonSpec,
    Tube,
    candidate_splits,
    connected_sum,
    gen_braid_closure,
    gen_ribbon,
    gen_spun_bridge,
    gen_trivial,
    split,
)
from .catalog import CatalogEntry, EnumBounds, enumerate_diagrams, entry_from, query, verdict
from .io import DiagramDocument, parse_document, serialize_document
from .render import render_svg
from .kernels import BACKEND

__version__ = "0.1.0"
