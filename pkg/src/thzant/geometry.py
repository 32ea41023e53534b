"""Parametric solid models: slotted patch antenna, triangular-ring unit cell,
PRS array, and the stacked cavity assembly.

Coordinate conventions (fixed, documented here once):
  * x runs along the feed/patch-length direction, y along the patch width,
    z upward. The antenna substrate occupies [0, l_s] x [0, w_s] x [0, h];
    ground sheet at z = 0, radiator sheets at z = h.
  * The feed line starts at the board edge x = 0 and ends at
    x = l_1 + l_2; the patch leading edge sits at l_1 + l_2 - l_3 so the
    inset cut depth is l_3.
  * Patch slot: l_c along y, w_c along x, centered on the patch.
  * Ring slot: rectangular annulus of width ring_thickness centered on the
    patch, outer size ring_outer_x x ring_outer_y (configurable).
  * Patch cuts: one w_3-deep, l_4-long notch centered on each side edge
    (y = const edges) of the patch.
  * DGS: rectangular ground defect, default w_c x l_c, centered under the
    patch leading edge.
  * Unit-cell triangles point toward +y with the centroid at the cell
    center; the ring is the outer equilateral triangle minus the concentric
    inner one.
  * z_s is the air gap between the radiator plane (z = h) and the bottom
    face of the PRS substrate; the copper rings sit on the PRS top face.

All lengths in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .materials import (
    ROGERS_RT5880,
    ROGERS_RT6010,
    ConductorSheetSpec,
    DielectricSpec,
    GrapheneSpec,
)

UM = 1e-6


class GeometryError(ValueError):
    """Geometry violates a structural invariant."""


# ---------------------------------------------------------------------------
# 2-D shape primitives (vectorized containment on face-center arrays)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Rect:
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise GeometryError(f"degenerate rectangle {self}")

    def contains(self, x, y):
        return (x >= self.x0) & (x <= self.x1) & (y >= self.y0) & (y <= self.y1)


@dataclass(frozen=True)
class Triangle:
    """Closed triangle; vertices in any winding order."""

    vertices: tuple[tuple[float, float], ...]

    def contains(self, x, y):
        (x1, y1), (x2, y2), (x3, y3) = self.vertices
        d1 = (x - x1) * (y2 - y1) - (y - y1) * (x2 - x1)
        d2 = (x - x2) * (y3 - y2) - (y - y2) * (x3 - x2)
        d3 = (x - x3) * (y1 - y3) - (y - y3) * (x1 - x3)
        neg = (d1 <= 0) & (d2 <= 0) & (d3 <= 0)
        pos = (d1 >= 0) & (d2 >= 0) & (d3 >= 0)
        return neg | pos


@dataclass(frozen=True)
class Annulus:
    """Outer shape minus a strictly interior inner shape."""

    outer: Union[Rect, Triangle]
    inner: Union[Rect, Triangle]

    def contains(self, x, y):
        return self.outer.contains(x, y) & ~self.inner.contains(x, y)


Shape = Union[Rect, Triangle, Annulus]


@dataclass(frozen=True)
class PatternGroup:
    """positives minus negatives; a sheet pattern is a union of groups."""

    positives: tuple[Shape, ...]
    negatives: tuple[Shape, ...] = ()

    def contains(self, x, y):
        inside = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        for s in self.positives:
            inside |= s.contains(x, y)
        for s in self.negatives:
            inside &= ~s.contains(x, y)
        return inside


@dataclass(frozen=True)
class SheetPattern:
    groups: tuple[PatternGroup, ...]

    def contains(self, x, y):
        inside = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        for g in self.groups:
            inside |= g.contains(x, y)
        return inside


SheetMaterial = Union[GrapheneSpec, ConductorSheetSpec, str]  # str: "pec"


@dataclass(frozen=True)
class SheetDef:
    """Zero-thickness patterned sheet on the z = z_plane grid plane."""

    name: str
    z_plane: float
    pattern: SheetPattern
    material: SheetMaterial


@dataclass(frozen=True)
class Box3D:
    """Axis-aligned dielectric volume."""

    name: str
    x0: float
    x1: float
    y0: float
    y1: float
    z0: float
    z1: float
    material: DielectricSpec

    def __post_init__(self):
        if self.x1 <= self.x0 or self.y1 <= self.y0 or self.z1 <= self.z0:
            raise GeometryError(f"degenerate box {self.name}")


# ---------------------------------------------------------------------------
# Patch antenna (Table-1 symbols)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PatchGeometry:
    """Slotted graphene patch with inset feed and DGS ground."""

    l_p: float = 36 * UM
    w_p: float = 60 * UM
    ring_thickness: float = 5 * UM
    w_1: float = 1 * UM
    w_2: float = 5 * UM
    w_3: float = 4 * UM
    l_4: float = 10 * UM
    l_c: float = 20 * UM
    w_c: float = 5 * UM
    l_s: float = 130 * UM
    w_s: float = 100 * UM
    h: float = 45 * UM
    l_1: float = 40 * UM
    l_2: float = 25 * UM
    l_3: float = 15 * UM
    # layout conventions (not Table-1 values; see module docstring)
    ring_outer_x: float = 32 * UM
    ring_outer_y: float = 50 * UM
    dgs_l: float = 20 * UM
    dgs_w: float = 5 * UM
    with_slots: bool = True
    substrate: DielectricSpec = ROGERS_RT6010
    radiator: GrapheneSpec = field(default_factory=GrapheneSpec)

    def __post_init__(self):
        lengths = {
            "l_p": self.l_p, "w_p": self.w_p, "ring_thickness": self.ring_thickness,
            "w_1": self.w_1, "w_2": self.w_2, "w_3": self.w_3, "l_4": self.l_4,
            "l_c": self.l_c, "w_c": self.w_c, "l_s": self.l_s, "w_s": self.w_s,
            "h": self.h, "l_1": self.l_1, "l_2": self.l_2, "l_3": self.l_3,
            "ring_outer_x": self.ring_outer_x, "ring_outer_y": self.ring_outer_y,
            "dgs_l": self.dgs_l, "dgs_w": self.dgs_w,
        }
        for name, v in lengths.items():
            if not (math.isfinite(v) and v > 0.0):
                raise GeometryError(f"{name} must be > 0, got {v}")
        if self.w_p > self.w_s:
            raise GeometryError(f"patch width {self.w_p} exceeds substrate width {self.w_s}")
        if self.l_p + self.l_1 > self.l_s:
            raise GeometryError("patch + microstrip do not fit on the substrate length")
        if self.l_3 >= self.l_p:
            raise GeometryError("inset cut must be shorter than the patch")
        if self.w_1 + 2 * self.w_2 >= self.w_p:
            raise GeometryError("inset cut wider than the patch")
        if self.feed_end > self.l_s:
            raise GeometryError("feed line runs off the substrate")

    # -- derived layout ----------------------------------------------------

    @property
    def feed_end(self) -> float:
        return self.l_1 + self.l_2

    @property
    def patch_x0(self) -> float:
        return self.feed_end - self.l_3

    @property
    def y_center(self) -> float:
        return self.w_s / 2.0

    @property
    def patch_center(self) -> tuple[float, float]:
        return (self.patch_x0 + self.l_p / 2.0, self.y_center)

    def radiator_pattern(self) -> SheetPattern:
        """Patch (with cutouts) unioned with the feed line."""
        cx, cy = self.patch_center
        patch = Rect(self.patch_x0, self.patch_x0 + self.l_p, cy - self.w_p / 2, cy + self.w_p / 2)
        negatives: list[Shape] = [
            Rect(self.patch_x0, self.feed_end,
                 cy - self.w_1 / 2 - self.w_2, cy + self.w_1 / 2 + self.w_2),
        ]
        if self.with_slots:
            negatives.append(
                Rect(cx - self.w_c / 2, cx + self.w_c / 2, cy - self.l_c / 2, cy + self.l_c / 2)
            )
            ox, oy = self.ring_outer_x / 2, self.ring_outer_y / 2
            t = self.ring_thickness
            if ox > t and oy > t:
                negatives.append(
                    Annulus(
                        Rect(cx - ox, cx + ox, cy - oy, cy + oy),
                        Rect(cx - ox + t, cx + ox - t, cy - oy + t, cy + oy - t),
                    )
                )
            x_cut0 = cx - self.l_4 / 2
            negatives.append(
                Rect(x_cut0, x_cut0 + self.l_4, cy - self.w_p / 2, cy - self.w_p / 2 + self.w_3)
            )
            negatives.append(
                Rect(x_cut0, x_cut0 + self.l_4, cy + self.w_p / 2 - self.w_3, cy + self.w_p / 2)
            )
        feed = Rect(0.0, self.feed_end, cy - self.w_1 / 2, cy + self.w_1 / 2)
        return SheetPattern(
            groups=(
                PatternGroup(positives=(patch,), negatives=tuple(negatives)),
                PatternGroup(positives=(feed,)),
            )
        )

    def ground_pattern(self) -> SheetPattern:
        """Full ground sheet minus the DGS defect under the patch leading edge."""
        ground = Rect(0.0, self.l_s, 0.0, self.w_s)
        dgs = Rect(
            self.patch_x0 - self.dgs_w / 2,
            self.patch_x0 + self.dgs_w / 2,
            self.y_center - self.dgs_l / 2,
            self.y_center + self.dgs_l / 2,
        )
        return SheetPattern(groups=(PatternGroup(positives=(ground,), negatives=(dgs,)),))

    def solids(self) -> tuple[list[Box3D], list[SheetDef]]:
        boxes = [
            Box3D("substrate", 0.0, self.l_s, 0.0, self.w_s, 0.0, self.h, self.substrate)
        ]
        sheets = [
            SheetDef("ground", 0.0, self.ground_pattern(), self.radiator),
            SheetDef("radiator", self.h, self.radiator_pattern(), self.radiator),
        ]
        return boxes, sheets


def default_patch() -> PatchGeometry:
    """Optimized Table-1 patch antenna."""
    return PatchGeometry()


# ---------------------------------------------------------------------------
# PRS unit cell and array (Table-2 symbols)
# ---------------------------------------------------------------------------

def triangle_vertices(side: float, cx: float, cy: float) -> tuple[tuple[float, float], ...]:
    """Equilateral triangle, apex toward +y, centroid at (cx, cy)."""
    r_apex = side / math.sqrt(3.0)
    return (
        (cx, cy + r_apex),
        (cx - side / 2.0, cy - r_apex / 2.0),
        (cx + side / 2.0, cy - r_apex / 2.0),
    )


@dataclass(frozen=True)
class UnitCellGeometry:
    """Triangular copper ring on a dielectric cell of span_x x span_y."""

    l_g: float = 17.32 * UM
    w_g: float = 8.66 * UM
    t_1: float = 5 * UM
    sub_thickness: float = 10 * UM
    span_x: float = 25 * UM
    span_y: float = 25 * UM
    substrate: DielectricSpec = ROGERS_RT5880
    metal: ConductorSheetSpec = ConductorSheetSpec(sigma_dc=5.8e7, thickness=5 * UM)

    def __post_init__(self):
        for name in ("l_g", "w_g", "t_1", "sub_thickness", "span_x", "span_y"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise GeometryError(f"{name} must be > 0, got {v}")
        if self.w_g >= self.l_g:
            raise GeometryError(f"inner side {self.w_g} must be smaller than outer {self.l_g}")
        if self.outer_height > self.span_y or self.l_g > self.span_x:
            raise GeometryError("triangle ring does not fit in the cell span")

    @property
    def outer_height(self) -> float:
        return self.l_g * math.sqrt(3.0) / 2.0

    def ring_shape(self, cx: float, cy: float) -> Annulus:
        if self.w_g <= 0.0:
            raise GeometryError("degenerate inner triangle")
        return Annulus(
            Triangle(triangle_vertices(self.l_g, cx, cy)),
            Triangle(triangle_vertices(self.w_g, cx, cy)),
        )

    def ring_area(self) -> float:
        """Analytic metal area of one ring."""
        return math.sqrt(3.0) / 4.0 * (self.l_g**2 - self.w_g**2)


def default_unit_cell() -> UnitCellGeometry:
    """Table-2 unit cell (10 um substrate from the section text)."""
    return UnitCellGeometry()


@dataclass(frozen=True)
class PrsArrayGeometry:
    """nx x ny array of unit cells on the l_s2 x w_s2 aperture."""

    cell: UnitCellGeometry = field(default_factory=default_unit_cell)
    nx: int = 5
    ny: int = 4
    l_s2: float = 125 * UM
    w_s2: float = 100 * UM

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise GeometryError("array needs at least one cell per axis")
        if self.nx * self.cell.span_x > self.l_s2 + 1e-15:
            raise GeometryError("cells overflow the aperture length")
        if self.ny * self.cell.span_y > self.w_s2 + 1e-15:
            raise GeometryError("cells overflow the aperture width")

    @property
    def pitch_x(self) -> float:
        return self.cell.span_x

    @property
    def pitch_y(self) -> float:
        return self.cell.span_y

    def ring_pattern(self) -> SheetPattern:
        """All rings, array centered on the aperture; origin at aperture corner."""
        x_off = (self.l_s2 - self.nx * self.pitch_x) / 2.0
        y_off = (self.w_s2 - self.ny * self.pitch_y) / 2.0
        rings = []
        for ix in range(self.nx):
            for iy in range(self.ny):
                cx = x_off + (ix + 0.5) * self.pitch_x
                cy = y_off + (iy + 0.5) * self.pitch_y
                rings.append(self.cell.ring_shape(cx, cy))
        return SheetPattern(groups=(PatternGroup(positives=tuple(rings)),))


def default_prs_array() -> PrsArrayGeometry:
    return PrsArrayGeometry()


# ---------------------------------------------------------------------------
# Stacked assembly
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CavityAssembly:
    """Patch antenna with the PRS suspended z_s above the radiator plane."""

    antenna: PatchGeometry = field(default_factory=default_patch)
    prs: PrsArrayGeometry = field(default_factory=default_prs_array)
    z_s: float = 15 * UM

    def __post_init__(self):
        if not (math.isfinite(self.z_s) and self.z_s > 0.0):
            raise GeometryError(f"z_s must be > 0, got {self.z_s}")

    def solids(self) -> tuple[list[Box3D], list[SheetDef]]:
        boxes, sheets = self.antenna.solids()
        ant = self.antenna
        # PRS centered over the antenna substrate footprint
        x0 = (ant.l_s - self.prs.l_s2) / 2.0
        y0 = (ant.w_s - self.prs.w_s2) / 2.0
        z_bot = ant.h + self.z_s
        z_top = z_bot + self.prs.cell.sub_thickness
        boxes.append(
            Box3D("prs_substrate", x0, x0 + self.prs.l_s2, y0, y0 + self.prs.w_s2,
                  z_bot, z_top, self.prs.cell.substrate)
        )
        pattern = self.prs.ring_pattern()
        shifted = SheetPattern(
            groups=tuple(
                PatternGroup(
                    positives=tuple(_shift(s, x0, y0) for s in g.positives),
                    negatives=tuple(_shift(s, x0, y0) for s in g.negatives),
                )
                for g in pattern.groups
            )
        )
        sheets.append(SheetDef("prs_rings", z_top, shifted, self.prs.cell.metal))
        return boxes, sheets


def _shift(shape: Shape, dx: float, dy: float) -> Shape:
    if isinstance(shape, Rect):
        return Rect(shape.x0 + dx, shape.x1 + dx, shape.y0 + dy, shape.y1 + dy)
    if isinstance(shape, Triangle):
        return Triangle(tuple((x + dx, y + dy) for x, y in shape.vertices))
    if isinstance(shape, Annulus):
        return Annulus(_shift(shape.outer, dx, dy), _shift(shape.inner, dx, dy))
    raise GeometryError(f"cannot shift {shape!r}")


def mirror_x(shape: Shape, axis_x: float) -> Shape:
    """Reflect a shape about the vertical line x = axis_x."""
    if isinstance(shape, Rect):
        return Rect(2 * axis_x - shape.x1, 2 * axis_x - shape.x0, shape.y0, shape.y1)
    if isinstance(shape, Triangle):
        return Triangle(tuple((2 * axis_x - x, y) for x, y in shape.vertices))
    if isinstance(shape, Annulus):
        return Annulus(mirror_x(shape.outer, axis_x), mirror_x(shape.inner, axis_x))
    raise GeometryError(f"cannot mirror {shape!r}")


def mirror_pattern_x(pattern: SheetPattern, axis_x: float) -> SheetPattern:
    return SheetPattern(
        groups=tuple(
            PatternGroup(
                positives=tuple(mirror_x(s, axis_x) for s in g.positives),
                negatives=tuple(mirror_x(s, axis_x) for s in g.negatives),
            )
            for g in pattern.groups
        )
    )
