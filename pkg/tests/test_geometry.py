"""Parametric solid models and their structural invariants."""

import math

import numpy as np
import pytest

from thzant.geometry import (
    Annulus,
    CavityAssembly,
    GeometryError,
    PatchGeometry,
    PrsArrayGeometry,
    Rect,
    Triangle,
    UnitCellGeometry,
    default_patch,
    default_prs_array,
    default_unit_cell,
    triangle_vertices,
)

UM = 1e-6


def test_default_patch_table_values():
    p = default_patch()
    assert p.w_p == pytest.approx(60 * UM)
    assert p.l_p == pytest.approx(36 * UM)
    assert p.ring_thickness == pytest.approx(5 * UM)
    assert p.w_1 == pytest.approx(1 * UM)
    assert p.w_2 == pytest.approx(5 * UM)
    assert p.w_3 == pytest.approx(4 * UM)
    assert p.l_4 == pytest.approx(10 * UM)
    assert p.l_c == pytest.approx(20 * UM)
    assert p.w_c == pytest.approx(5 * UM)
    assert p.l_s == pytest.approx(130 * UM)
    assert p.w_s == pytest.approx(100 * UM)
    assert p.h == pytest.approx(45 * UM)
    assert p.l_1 == pytest.approx(40 * UM)
    assert p.l_2 == pytest.approx(25 * UM)
    assert p.l_3 == pytest.approx(15 * UM)
    assert p.substrate.eps_r == pytest.approx(10.2)
    assert p.substrate.tan_delta == pytest.approx(0.0023)


def test_default_patch_arithmetic_invariants():
    p = default_patch()
    assert p.w_1 + 2 * p.w_2 < p.w_p  # 11 < 60
    assert p.l_p + p.l_1 <= p.l_s     # 76 <= 130


def test_patch_invariant_violations():
    with pytest.raises(GeometryError):
        PatchGeometry(w_p=120 * UM)  # wider than the substrate
    with pytest.raises(GeometryError):
        PatchGeometry(l_p=100 * UM)  # patch + feed off the board
    with pytest.raises(GeometryError):
        PatchGeometry(l_3=50 * UM)   # inset cut through the whole patch
    with pytest.raises(GeometryError):
        PatchGeometry(w_2=30 * UM)   # cut wider than the patch
    with pytest.raises(GeometryError):
        PatchGeometry(h=-1 * UM)


def test_default_unit_cell_table_values():
    c = default_unit_cell()
    assert c.l_g == pytest.approx(17.32 * UM)
    assert c.w_g == pytest.approx(8.66 * UM)
    assert c.t_1 == pytest.approx(5 * UM)
    assert c.sub_thickness == pytest.approx(10 * UM)
    assert c.l_g / c.w_g == pytest.approx(2.0)
    assert c.w_g < c.l_g


def test_unit_cell_triangle_height():
    c = default_unit_cell()
    assert c.outer_height == pytest.approx(15.0 * UM, rel=2e-4)
    assert c.outer_height == pytest.approx(c.l_g * math.sqrt(3) / 2, rel=1e-15)


def test_unit_cell_rejects_inverted_ring():
    with pytest.raises(GeometryError):
        UnitCellGeometry(l_g=8e-6, w_g=9e-6)


def test_triangle_vertices_centroid_and_orientation():
    verts = triangle_vertices(12 * UM, 5 * UM, 7 * UM)
    cx = sum(v[0] for v in verts) / 3
    cy = sum(v[1] for v in verts) / 3
    assert cx == pytest.approx(5 * UM)
    assert cy == pytest.approx(7 * UM)
    apex = max(verts, key=lambda v: v[1])
    assert apex[0] == pytest.approx(5 * UM)  # apex toward +y


def test_triangle_contains():
    t = Triangle(triangle_vertices(10.0, 0.0, 0.0))
    assert t.contains(np.array(0.0), np.array(0.0))
    assert not t.contains(np.array(6.0), np.array(0.0))
    # ring: between inner and outer only
    ring = Annulus(
        Triangle(triangle_vertices(10.0, 0.0, 0.0)),
        Triangle(triangle_vertices(5.0, 0.0, 0.0)),
    )
    assert not ring.contains(np.array(0.0), np.array(0.0))
    assert ring.contains(np.array(0.0), np.array(-2.6))


def test_prs_array_defaults():
    a = default_prs_array()
    assert a.nx == 5 and a.ny == 4
    assert a.l_s2 == pytest.approx(125 * UM)
    assert a.w_s2 == pytest.approx(100 * UM)
    assert a.pitch_x == pytest.approx(25 * UM)
    assert a.nx * a.pitch_x <= a.l_s2 + 1e-15
    assert a.ny * a.pitch_y <= a.w_s2 + 1e-15
    pattern = a.ring_pattern()
    assert len(pattern.groups[0].positives) == 20


def test_prs_array_overflow_rejected():
    cell = UnitCellGeometry(span_x=30 * UM)
    with pytest.raises(GeometryError):
        PrsArrayGeometry(cell=cell)  # 5 x 30 um > 125 um


def test_assembly_solids_stacking():
    asm = CavityAssembly(z_s=15 * UM)
    boxes, sheets = asm.solids()
    names = [b.name for b in boxes]
    assert names == ["substrate", "prs_substrate"]
    prs_box = boxes[1]
    ant = asm.antenna
    assert prs_box.z0 == pytest.approx(ant.h + 15 * UM)
    assert prs_box.z1 == pytest.approx(ant.h + 15 * UM + 10 * UM)
    sheet_names = [s.name for s in sheets]
    assert sheet_names == ["ground", "radiator", "prs_rings"]
    assert sheets[2].z_plane == pytest.approx(prs_box.z1)


def test_assembly_rejects_nonpositive_gap():
    with pytest.raises(GeometryError):
        CavityAssembly(z_s=0.0)


def test_patterns_are_symmetric_about_feed_axis():
    p = default_patch()
    xs = np.linspace(1 * UM, 129 * UM, 257)
    y_hi = p.y_center + 17.3 * UM
    y_lo = p.y_center - 17.3 * UM
    pat = p.radiator_pattern()
    a = pat.contains(xs, np.full_like(xs, y_hi))
    b = pat.contains(xs, np.full_like(xs, y_lo))
    assert np.array_equal(a, b)
