"""Rasterization of solid models onto a Yee grid.

Tagging rules (fixed):
  * A cell takes a dielectric id when its center lies inside a box
    (closed intervals); later boxes override earlier ones.
  * A sheet lives on the nearest grid plane; a face is tagged when its
    center lies inside the sheet pattern.
  * An in-plane E edge belongs to a sheet when either adjacent tagged face
    does, which keeps conduction paths connected.
  * Edge permittivity/conductivity is the average over the four touching
    cells (air outside the grid); conducting sheets add G/dz to the edge
    conductivity, PEC sheets pin the edge, graphene sheets keep edge lists
    for the dispersive update.

Rasterization is deterministic and single-pass; identical inputs give
identical grids regardless of how callers partition downstream work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .materials import ConductorSheetSpec, DielectricSpec, GrapheneSpec
from .geometry import (
    Box3D,
    CavityAssembly,
    GeometryError,
    PatchGeometry,
    SheetDef,
    UnitCellGeometry,
)

_AIR_EPS = 1.0

SHEET_KIND_GRAPHENE = "graphene"
SHEET_KIND_CONDUCTOR = "conductor"
SHEET_KIND_PEC = "pec"


@dataclass
class VoxelSheet:
    """One rasterized sheet: face mask on its plane plus tagged-edge indices."""

    name: str
    kind: str
    k_plane: int
    face_mask: np.ndarray       # (nx, ny) bool
    spec: object                # GrapheneSpec | ConductorSheetSpec | None
    ex_edges: np.ndarray        # (n, 2) int32 (i, j) of Ex edges on the plane
    ey_edges: np.ndarray        # (n, 2) int32 (i, j) of Ey edges on the plane

    def tagged_area(self, dx: float, dy: float) -> float:
        return float(np.count_nonzero(self.face_mask)) * dx * dy


@dataclass
class VoxelGrid:
    """Yee-grid material assignment.

    Cell-centered dielectric tags plus per-E-edge material ids into
    (edge_eps, edge_sigma, edge_pec) lookup tables; sheet ids per edge.
    """

    dx: float
    dy: float
    dz: float
    origin: tuple[float, float, float]
    shape: tuple[int, int, int]
    cell_tag: np.ndarray                  # (nx, ny, nz) uint8
    cell_materials: list[DielectricSpec]  # id -> spec (0 is air)
    edge_tag: dict                        # comp -> uint16 array, Yee edge shapes
    edge_eps: np.ndarray                  # id -> relative permittivity
    edge_sigma: np.ndarray                # id -> conductivity [S/m]
    edge_pec: np.ndarray                  # id -> bool
    sheet_tag: dict                       # comp -> uint8 array (0 = none)
    sheets: list[VoxelSheet] = field(default_factory=list)

    @property
    def nx(self) -> int:
        return self.shape[0]

    @property
    def ny(self) -> int:
        return self.shape[1]

    @property
    def nz(self) -> int:
        return self.shape[2]

    def sheet_by_name(self, name: str) -> VoxelSheet:
        for s in self.sheets:
            if s.name == name:
                return s
        raise KeyError(name)

    def k_index(self, z: float) -> int:
        return int(round((z - self.origin[2]) / self.dz))

    def dump(self, path) -> None:
        """ASCII header + little-endian flat tag arrays, x-fastest."""
        with open(path, "wb") as fh:
            lines = [
                "voxelgrid 1",
                f"dims {self.nx} {self.ny} {self.nz}",
                f"spacing {self.dx!r} {self.dy!r} {self.dz!r}",
                f"origin {self.origin[0]!r} {self.origin[1]!r} {self.origin[2]!r}",
                f"cell_materials {len(self.cell_materials)}",
            ]
            for idx, m in enumerate(self.cell_materials):
                lines.append(
                    f"cell_material {idx} name={m.name or 'mat%d' % idx} "
                    f"eps_r={m.eps_r!r} tan_delta={m.tan_delta!r}"
                )
            lines.append(f"edge_materials {self.edge_eps.size}")
            for idx in range(self.edge_eps.size):
                lines.append(
                    f"edge_material {idx} eps={self.edge_eps[idx]!r} "
                    f"sigma={self.edge_sigma[idx]!r} pec={int(self.edge_pec[idx])}"
                )
            lines.append(f"sheets {len(self.sheets)}")
            for idx, s in enumerate(self.sheets):
                lines.append(f"sheet {idx + 1} name={s.name} kind={s.kind} k={s.k_plane}")
            arrays = [("cell_tag", self.cell_tag)]
            for comp in ("x", "y", "z"):
                arrays.append((f"edge_tag_{comp}", self.edge_tag[comp]))
                arrays.append((f"sheet_tag_{comp}", self.sheet_tag[comp]))
            lines.append(f"arrays {len(arrays)}")
            for name, arr in arrays:
                sh = " ".join(str(n) for n in arr.shape)
                lines.append(f"array {name} {arr.dtype.name} {sh}")
            lines.append("end_header")
            fh.write(("\n".join(lines) + "\n").encode("ascii"))
            for _, arr in arrays:
                fh.write(np.ascontiguousarray(arr.T).tobytes())  # x varies fastest


def _edge_shapes(nx: int, ny: int, nz: int) -> dict:
    return {
        "x": (nx, ny + 1, nz + 1),
        "y": (nx + 1, ny, nz + 1),
        "z": (nx + 1, ny + 1, nz),
    }


def smallest_feature(obj) -> float:
    """Smallest in-plane feature governing the cells-per-feature resolution.

    The w_1 feed is excluded: it is deliberately collapsed to one cell.
    """
    if isinstance(obj, PatchGeometry):
        return min(obj.w_2, obj.w_3, obj.w_c, obj.l_4, obj.l_3,
                   obj.ring_thickness, obj.dgs_w, obj.h)
    if isinstance(obj, UnitCellGeometry):
        band = (obj.l_g - obj.w_g) / (2.0 * math.sqrt(3.0))
        return min(band, obj.sub_thickness)
    if isinstance(obj, CavityAssembly):
        band = (obj.prs.cell.l_g - obj.prs.cell.w_g) / (2.0 * math.sqrt(3.0))
        return min(smallest_feature(obj.antenna), band, obj.prs.cell.sub_thickness, obj.z_s)
    raise GeometryError(f"no feature size defined for {type(obj).__name__}")


def voxelize_parts(
    boxes: list[Box3D],
    sheets: list[SheetDef],
    bounds: tuple[tuple[float, float], tuple[float, float], tuple[float, float]],
    dx: float,
    dy: float | None = None,
    dz: float | None = None,
    origin: tuple[float, float, float] | None = None,
) -> VoxelGrid:
    """Rasterize explicit boxes/sheets over the given physical bounds."""
    dy = dx if dy is None else dy
    dz = dx if dz is None else dz
    (x0, x1), (y0, y1), (z0, z1) = bounds
    if origin is None:
        origin = (x0, y0, z0)
    nx = max(1, int(math.ceil((x1 - origin[0]) / dx - 1e-9)))
    ny = max(1, int(math.ceil((y1 - origin[1]) / dy - 1e-9)))
    nz = max(1, int(math.ceil((z1 - origin[2]) / dz - 1e-9)))

    for b in boxes:
        for name, lo, hi, d in (
            (f"{b.name}.x", b.x0, b.x1, dx),
            (f"{b.name}.y", b.y0, b.y1, dy),
            (f"{b.name}.z", b.z0, b.z1, dz),
        ):
            if hi - lo < d * (1.0 - 1e-9):
                raise GeometryError(
                    f"feature '{name}' spans {hi - lo:.3e} m, thinner than one "
                    f"cell ({d:.3e} m) and not representable as a sheet"
                )

    # cell-centered dielectric tags
    cx = origin[0] + (np.arange(nx) + 0.5) * dx
    cy = origin[1] + (np.arange(ny) + 0.5) * dy
    cz = origin[2] + (np.arange(nz) + 0.5) * dz
    cell_tag = np.zeros((nx, ny, nz), dtype=np.uint8)
    materials: list[DielectricSpec] = [DielectricSpec(1.0, 0.0, name="air")]
    for b in boxes:
        try:
            mat_id = next(
                i for i, m in enumerate(materials)
                if m.eps_r == b.material.eps_r and m.tan_delta == b.material.tan_delta
            )
        except StopIteration:
            materials.append(b.material)
            mat_id = len(materials) - 1
        mask = (
            ((cx >= b.x0) & (cx <= b.x1))[:, None, None]
            & ((cy >= b.y0) & (cy <= b.y1))[None, :, None]
            & ((cz >= b.z0) & (cz <= b.z1))[None, None, :]
        )
        cell_tag[mask] = mat_id

    # per-edge averaged (eps, sigma) via air-padded cell fields
    eps_cells = np.array([m.eps_r for m in materials])[cell_tag]
    sig_cells = np.array([m.conductivity() for m in materials])[cell_tag]
    eps_pad = np.pad(eps_cells, 1, constant_values=_AIR_EPS)
    sig_pad = np.pad(sig_cells, 1, constant_values=0.0)

    def edge_avg(arr, comp):
        if comp == "x":
            return 0.25 * (arr[1:-1, :-1, :-1] + arr[1:-1, 1:, :-1]
                           + arr[1:-1, :-1, 1:] + arr[1:-1, 1:, 1:])
        if comp == "y":
            return 0.25 * (arr[:-1, 1:-1, :-1] + arr[1:, 1:-1, :-1]
                           + arr[:-1, 1:-1, 1:] + arr[1:, 1:-1, 1:])
        return 0.25 * (arr[:-1, :-1, 1:-1] + arr[1:, :-1, 1:-1]
                       + arr[:-1, 1:, 1:-1] + arr[1:, 1:, 1:-1])

    edge_eps_val = {c: edge_avg(eps_pad, c) for c in ("x", "y", "z")}
    edge_sig_val = {c: edge_avg(sig_pad, c) for c in ("x", "y", "z")}
    edge_pec_val = {c: np.zeros(edge_eps_val[c].shape, dtype=bool) for c in ("x", "y", "z")}
    sheet_tag = {
        c: np.zeros(_edge_shapes(nx, ny, nz)[c], dtype=np.uint8) for c in ("x", "y", "z")
    }

    # faces on sheet planes: centers offset half a cell in x and y
    fx = origin[0] + (np.arange(nx) + 0.5) * dx
    fy = origin[1] + (np.arange(ny) + 0.5) * dy

    voxel_sheets: list[VoxelSheet] = []
    for s_index, sheet in enumerate(sheets, start=1):
        if s_index > 255:
            raise GeometryError("more than 255 sheets")
        k = int(round((sheet.z_plane - origin[2]) / dz))
        if not (0 <= k <= nz):
            raise GeometryError(
                f"sheet '{sheet.name}' plane z={sheet.z_plane:g} lies outside the grid"
            )
        mask = sheet.pattern.contains(fx[:, None], fy[None, :])
        padded = np.zeros((nx + 2, ny + 2), dtype=bool)
        padded[1:-1, 1:-1] = mask
        # Ex edges (i, j): faces (i, j-1) and (i, j); Ey edges: (i-1, j), (i, j)
        ex_mask = padded[1:-1, :-1] | padded[1:-1, 1:]      # (nx, ny+1)
        ey_mask = padded[:-1, 1:-1] | padded[1:, 1:-1]      # (nx+1, ny)

        if isinstance(sheet.material, str) and sheet.material == SHEET_KIND_PEC:
            kind, spec = SHEET_KIND_PEC, None
            edge_pec_val["x"][:, :, k][ex_mask] = True
            edge_pec_val["y"][:, :, k][ey_mask] = True
        elif isinstance(sheet.material, ConductorSheetSpec):
            kind, spec = SHEET_KIND_CONDUCTOR, sheet.material
            g_eff = sheet.material.sheet_conductance / dz
            edge_sig_val["x"][:, :, k][ex_mask] += g_eff
            edge_sig_val["y"][:, :, k][ey_mask] += g_eff
        elif isinstance(sheet.material, GrapheneSpec):
            kind, spec = SHEET_KIND_GRAPHENE, sheet.material
        else:
            raise GeometryError(f"sheet '{sheet.name}': unsupported material {sheet.material!r}")

        sheet_tag["x"][:, :, k][ex_mask] = s_index
        sheet_tag["y"][:, :, k][ey_mask] = s_index
        exi, exj = np.nonzero(ex_mask)
        eyi, eyj = np.nonzero(ey_mask)
        voxel_sheets.append(
            VoxelSheet(
                name=sheet.name,
                kind=kind,
                k_plane=k,
                face_mask=mask,
                spec=spec,
                ex_edges=np.column_stack([exi, exj]).astype(np.int32),
                ey_edges=np.column_stack([eyi, eyj]).astype(np.int32),
            )
        )

    # unique (eps, sigma, pec) triples -> edge material table
    all_eps = np.concatenate([edge_eps_val[c].ravel() for c in ("x", "y", "z")])
    all_sig = np.concatenate([edge_sig_val[c].ravel() for c in ("x", "y", "z")])
    all_pec = np.concatenate([edge_pec_val[c].ravel() for c in ("x", "y", "z")])
    eps_u, eps_inv = np.unique(all_eps, return_inverse=True)
    sig_u, sig_inv = np.unique(all_sig, return_inverse=True)
    combo = (eps_inv.astype(np.int64) * len(sig_u) + sig_inv) * 2 + all_pec
    combo_u, inverse = np.unique(combo, return_inverse=True)
    if combo_u.size > 65535:
        raise GeometryError("edge material table overflow")
    pec_t = (combo_u % 2).astype(bool)
    sig_t = sig_u[(combo_u // 2) % len(sig_u)]
    eps_t = eps_u[combo_u // (2 * len(sig_u))]
    edge_tag = {}
    offset = 0
    for c in ("x", "y", "z"):
        n = edge_eps_val[c].size
        edge_tag[c] = inverse[offset:offset + n].reshape(edge_eps_val[c].shape).astype(np.uint16)
        offset += n

    return VoxelGrid(
        dx=dx, dy=dy, dz=dz,
        origin=origin,
        shape=(nx, ny, nz),
        cell_tag=cell_tag,
        cell_materials=materials,
        edge_tag=edge_tag,
        edge_eps=eps_t.copy(),
        edge_sigma=sig_t.copy(),
        edge_pec=pec_t,
        sheet_tag=sheet_tag,
        sheets=voxel_sheets,
    )


def voxelize(
    obj,
    resolution: int | None = None,
    dx: float | None = None,
    padding_cells: tuple[int, int, int] = (0, 0, 0),
) -> VoxelGrid:
    """Rasterize a PatchGeometry / UnitCellGeometry / CavityAssembly.

    resolution = cells per smallest feature (>= 2), or pass dx directly.
    padding_cells adds air margin on every side. The grid origin is shifted
    so the w_1 feed strip sits exactly one cell wide (see module docstring).
    """
    if (resolution is None) == (dx is None):
        raise GeometryError("pass exactly one of resolution or dx")
    if resolution is not None:
        if resolution < 2:
            raise GeometryError(f"resolution must be >= 2, got {resolution}")
        dx = smallest_feature(obj) / float(resolution)

    boxes, sheets = obj.solids() if hasattr(obj, "solids") else obj
    xs = [b.x0 for b in boxes] + [b.x1 for b in boxes]
    ys = [b.y0 for b in boxes] + [b.y1 for b in boxes]
    zs = [b.z0 for b in boxes] + [b.z1 for b in boxes]
    zs += [s.z_plane for s in sheets]
    if not xs:
        raise GeometryError("nothing to voxelize")
    px, py, pz = padding_cells
    x_lo, x_hi = min(xs) - px * dx, max(xs) + px * dx
    y_lo, y_hi = min(ys) - py * dx, max(ys) + py * dx
    z_lo, z_hi = min(zs) - pz * dx, max(zs) + pz * dx

    origin_y = y_lo
    antenna = obj.antenna if isinstance(obj, CavityAssembly) else obj
    if isinstance(antenna, PatchGeometry):
        feed_lo = antenna.y_center - antenna.w_1 / 2.0
        frac = (feed_lo - y_lo) / dx
        origin_y = y_lo + (frac - math.floor(frac)) * dx - dx
    return voxelize_parts(
        boxes, sheets,
        bounds=((x_lo, x_hi), (y_lo, y_hi), (z_lo, z_hi)),
        dx=dx,
        origin=(x_lo, origin_y, z_lo),
    )
