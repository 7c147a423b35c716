import numpy as np
import pytest

from foldwidth import (
    BraidSpec,
    Realization,
    RibbonSpec,
    Tube,
    build_diagram,
    canonical_code,
    enumerate_labelings,
    euler_char_stratified,
    gen_braid_closure,
    gen_ribbon,
    gen_spun_bridge,
    realize,
    rotation_degree_numeric,
    trace_realization,
)
from foldwidth.errors import InvalidLabeling
from foldwidth.geometry import DegenerateRealization, check_realization

import shapes


def figure_eight_points(n=200):
    t = np.linspace(0, 2 * np.pi, n, endpoint=False) + 0.01
    return np.c_[np.sin(t), np.sin(t) * np.cos(t)]


def test_trace_deltoid_in_circle():
    arr = trace_realization(shapes.d7_realization())
    assert canonical_code(arr.diagram) == canonical_code(shapes.d7())
    assert arr.labeling.widths == (0, 2, 4)


def test_orientation_of_inner_circle_sets_its_width():
    outer = shapes.circle_points(3.0)
    assert trace_realization(Realization([outer, shapes.circle_points(1.0)])).labeling.widths == (0, 2, 4)
    assert trace_realization(Realization([outer, shapes.circle_points(1.0, ccw=False)])).labeling.widths == (0, 2, 0)


def test_side_by_side_circles():
    real = Realization([shapes.circle_points(1.0, (0, 0)), shapes.circle_points(1.0, (3, 0))])
    arr = trace_realization(real)
    assert canonical_code(arr.diagram) == canonical_code(shapes.d4())
    assert arr.labeling.widths == (0, 2, 2)


def test_figure_eight_traces_but_cannot_be_labeled():
    real = Realization([figure_eight_points()])
    arr = trace_realization(real, labeled=False)
    assert canonical_code(arr.diagram) == canonical_code(shapes.d3())
    with pytest.raises(InvalidLabeling):
        trace_realization(real)


def test_three_passes_through_a_point_are_degenerate():
    curves = [np.array([[0, 0], [1, 0], [0, 1]]), np.array([[0, 0], [1, 1], [-1, 0.5]]),
              np.array([[0, 0], [-1, -1], [0.5, -1]])]
    with pytest.raises(DegenerateRealization):
        trace_realization(Realization(curves), labeled=False)


def test_closing_point_is_dropped():
    pts = shapes.circle_points(n=10)
    real = Realization([np.vstack([pts, pts[:1]])])
    assert len(real.curves[0]) == 10


@pytest.mark.parametrize("make", [
    shapes.d1, shapes.d2, shapes.d4, shapes.d7,
    lambda: gen_spun_bridge(2)[0],
    lambda: gen_braid_closure(BraidSpec(2, 2))[0],
])
def test_realize_round_trips_every_labeling(make):
    d = make()
    for lab in enumerate_labelings(d):
        real = realize(d, lab)
        check_realization(real, d, lab)
        assert rotation_degree_numeric(real) == euler_char_stratified(d, lab)


@pytest.mark.parametrize("out", [
    gen_spun_bridge(3, realization=True),
    gen_braid_closure(BraidSpec(3, 4), realization=True),
    gen_ribbon(RibbonSpec(3, (Tube(0, 1), Tube(1, 2, (0,)))), realization=True),
])
def test_generator_drawings_match_their_diagrams(out):
    d, lab, real = out
    check_realization(real, d, lab)


def test_realize_handles_edges_listed_high_dart_first():
    # a one-cusp loop whose only edge is written [1, 0]
    teardrop = {"vertices": [{"id": 0, "kind": "cusp", "darts": [0, 1], "wedge_corner": 0}], "edges": [[1, 0]]}
    d = build_diagram({"components": [shapes.CIRCLE, teardrop],
                       "placements": [{"parent": None}, {"parent": 0, "parent_face": 1}]})
    real = realize(d, (0, 2, 4))
    assert rotation_degree_numeric(real, d, (0, 2, 4)) == euler_char_stratified(d, (0, 2, 4)) == 3
