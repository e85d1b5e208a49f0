import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatgrid.surface import (
    SurfaceError,
    TranslationSurface,
    apply_matrix,
    canonicalize,
    check,
    is_affine_automorphism,
    is_translation_equivalent,
    polygon_area,
    quotient_by_involution,
    stratum,
    translate_polygons,
    validate,
    vertex_cycles,
)

SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)


def torus():
    return TranslationSurface.from_pairs([SQUARE], [((0, 0), (0, 2)), ((0, 1), (0, 3))])


def octagon():
    k = np.arange(8)
    verts = np.c_[np.cos(2 * np.pi * k / 8), np.sin(2 * np.pi * k / 8)]
    return TranslationSurface.from_pairs([verts], [((0, i), (0, i + 4)) for i in range(4)])


def two_tori():
    """Two unit squares glued into a 2-square torus cover."""
    b = SQUARE + [1, 0]
    pairs = [((0, 1), (1, 3)), ((1, 1), (0, 3)), ((0, 0), (1, 2)), ((1, 0), (0, 2))]
    return TranslationSurface.from_pairs([SQUARE, b], pairs)


def test_polygon_area_sign():
    assert polygon_area(SQUARE) == pytest.approx(1.0)
    assert polygon_area(SQUARE[::-1]) == pytest.approx(-1.0)


def test_torus_and_octagon_strata():
    st_t = stratum(torus())
    assert (st_t.genus, st_t.zeros, st_t.marked_points) == (1, (), 1)
    st_o = stratum(octagon())
    assert st_o.genus == 2 and st_o.zero_orders == (2,)
    assert st_o.cone_angles[0] == pytest.approx(6 * math.pi)
    assert st_o.gauss_bonnet_ok()
    assert st_o.zeros_label() == "1x2"


def test_validate_reports_problems():
    s = TranslationSurface.from_pairs([SQUARE], [((0, 0), (0, 2))])
    report = validate(s)
    assert not report.ok and any("unglued" in p for p in report.problems)
    bad = TranslationSurface.from_pairs([SQUARE], [((0, 0), (0, 1)), ((0, 2), (0, 3))])
    assert any("mismatch" in p for p in validate(bad).problems)
    cw = TranslationSurface.from_pairs([SQUARE[::-1]], [((0, 0), (0, 2)), ((0, 1), (0, 3))])
    assert any("counterclockwise" in p for p in validate(cw).problems)
    with pytest.raises(SurfaceError):
        check(bad)


def test_surface_is_immutable():
    s = torus()
    with pytest.raises(ValueError):
        s.polygons[0][0, 0] = 5.0
    with pytest.raises(TypeError):
        s.pairing[(0, 0)] = (0, 1)


def test_canonicalize_drops_zero_edges():
    # square with two duplicated corners: edges 1 and 4 have zero length
    verts = np.array([[0, 0], [1, 0], [1, 0], [1, 1], [0, 1], [0, 1]], float)
    pairing = {(0, 0): (0, 3), (0, 3): (0, 0), (0, 2): (0, 5), (0, 5): (0, 2),
               (0, 1): (0, 4), (0, 4): (0, 1)}
    s, renum = canonicalize([verts], pairing)
    assert renum == {0: 0}
    assert len(s.polygons[0]) == 4
    assert validate(s).ok
    assert stratum(s).genus == 1


def test_two_square_cover():
    s = two_tori()
    assert validate(s).ok
    info = stratum(s)
    assert info.genus == 1 and info.zeros == ()
    assert len(vertex_cycles(s)) == 2


def test_translation_equivalence_is_invariant_under_relabel_and_shift():
    s = two_tori()
    swapped = TranslationSurface.from_pairs(
        [s.polygons[1] + [5, 5], s.polygons[0]],
        [((1 - p, e), (1 - q, f)) for (p, e), (q, f) in s.glue_pairs()],
    )
    assert is_translation_equivalent(s, swapped) is not None
    assert is_translation_equivalent(s, translate_polygons(s, [[3, 1], [-2, 7]])) is not None
    assert is_translation_equivalent(s, octagon()) is None


unimodular = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(
    lambda t: t[0] != 0
)


@settings(max_examples=40, deadline=None)
@given(unimodular)
def test_integer_shears_preserve_square_torus(t):
    a, b, c = t
    # build det +1 matrix [[a, b], [c, (1 + b c)/a]] only when integral
    if (1 + b * c) % a:
        return
    M = np.array([[a, b], [c, (1 + b * c) // a]], float)
    assert is_affine_automorphism(torus(), M)


def test_octagon_symmetries():
    s = octagon()
    r = np.array([[math.cos(math.pi / 4), -math.sin(math.pi / 4)],
                  [math.sin(math.pi / 4), math.cos(math.pi / 4)]])
    assert is_affine_automorphism(s, r)
    assert is_affine_automorphism(s, np.diag([1.0, -1.0]))
    assert not is_affine_automorphism(s, np.array([[1.0, 0.5], [0.0, 1.0]]))
    assert not is_affine_automorphism(s, 2 * np.eye(2))


def test_apply_matrix_reflection_keeps_orientation():
    s = apply_matrix(octagon(), np.diag([-1.0, 1.0]))
    assert validate(s).ok
    assert stratum(s).zero_orders == (2,)


def test_quotient_by_translation():
    s = two_tori()
    q = quotient_by_involution(s, {0: 1, 1: 0})
    assert validate(q).ok
    assert len(q.polygons) == 1 and q.area() == pytest.approx(s.area() / 2)
    with pytest.raises(SurfaceError):
        quotient_by_involution(s, {0: 0, 1: 1})
