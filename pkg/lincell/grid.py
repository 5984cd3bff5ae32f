from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import torch

CELL_DTYPE = torch.uint8


class Grid:
    """An m x n binary grid with null boundary: reads outside the grid are 0.

    Grids are treated as immutable; every operation returns a new grid.
    """

    cells: torch.Tensor

    def __init__(self, cells: torch.Tensor):
        if not isinstance(cells, torch.Tensor):
            cells = torch.as_tensor(cells)
        if cells.dim() != 2:
            raise ValueError(f"Grid cells must be two-dimensional, got shape {tuple(cells.shape)}")
        if cells.shape[0] == 0 or cells.shape[1] == 0:
            raise ValueError(f"Grid must be non-empty, got {cells.shape[0]}x{cells.shape[1]}")
        if cells.dtype != CELL_DTYPE:
            if cells.is_floating_point():
                raise ValueError("Grid cells must be integers or booleans")
            cells = cells.to(torch.int64)
        if ((cells != 0) & (cells != 1)).any():
            raise ValueError("Grid cells must be 0 or 1")
        self.cells = cells.to(CELL_DTYPE).contiguous()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Grid":
        if len(rows) == 0:
            raise ValueError("Grid must be non-empty")
        widths = {len(row) for row in rows}
        if len(widths) != 1:
            raise ValueError(f"Ragged rows: widths {sorted(widths)}")
        return cls(torch.tensor([list(row) for row in rows], dtype=torch.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Grid":
        _check_shape(rows, cols)
        return cls(torch.zeros((rows, cols), dtype=CELL_DTYPE))

    @classmethod
    def ones(cls, rows: int, cols: int) -> "Grid":
        _check_shape(rows, cols)
        return cls(torch.ones((rows, cols), dtype=CELL_DTYPE))

    @classmethod
    def from_points(cls, rows: int, cols: int, points: Iterable[Tuple[int, int]]) -> "Grid":
        _check_shape(rows, cols)
        cells = torch.zeros((rows, cols), dtype=CELL_DTYPE)
        for i, j in points:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"Point ({i}, {j}) lies outside a {rows}x{cols} grid")
            cells[i, j] = 1
        return cls(cells)

    @classmethod
    def unflatten(cls, vector: torch.Tensor, rows: int, cols: int) -> "Grid":
        if vector.numel() != rows * cols:
            raise ValueError(f"Vector of length {vector.numel()} cannot fill a {rows}x{cols} grid")
        return cls(vector.reshape(rows, cols))

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def get(self, i: int, j: int) -> int:
        if 0 <= i < self.rows and 0 <= j < self.cols:
            return int(self.cells[i, j])
        return 0

    def flatten(self) -> torch.Tensor:
        return self.cells.reshape(-1)

    def count(self) -> int:
        return int(self.cells.sum())

    def to_rows(self) -> List[List[int]]:
        return self.cells.tolist()

    def points(self) -> List[Tuple[int, int]]:
        return [(int(i), int(j)) for i, j in self.cells.nonzero().tolist()]

    def bounding_box(self) -> Optional[Tuple[int, int, int, int]]:
        """(top, left, bottom, right), inclusive, or None for an empty grid."""
        occupied = self.cells.nonzero()
        if occupied.numel() == 0:
            return None
        top, left = occupied.min(dim=0).values.tolist()
        bottom, right = occupied.max(dim=0).values.tolist()
        return (top, left, bottom, right)

    def __xor__(self, other: "Grid") -> "Grid":
        if not isinstance(other, Grid):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"Cannot combine {self.rows}x{self.cols} and {other.rows}x{other.cols} grids")
        return Grid(self.cells ^ other.cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return self.shape == other.shape and bool(torch.equal(self.cells, other.cells))

    def __hash__(self):
        return hash((self.shape, bytes(self.cells.flatten().tolist())))

    def __repr__(self) -> str:
        return f"Grid({self.rows}x{self.cols}, ones={self.count()})"

    def __str__(self) -> str:
        return "\n".join("".join(str(v) for v in row) for row in self.to_rows())


def _check_shape(rows: int, cols: int):
    if rows <= 0 or cols <= 0:
        raise ValueError(f"Grid must be non-empty, got {rows}x{cols}")


def gather(cells: torch.Tensor, dr: int, dc: int) -> torch.Tensor:
    """out[..., i, j] = cells[..., i + dr, j + dc], zero outside the last two axes."""
    rows, cols = cells.shape[-2], cells.shape[-1]
    out = torch.zeros_like(cells)
    if abs(dr) >= rows or abs(dc) >= cols:
        return out
    src_rows = slice(max(dr, 0), rows + min(dr, 0))
    dst_rows = slice(max(-dr, 0), rows + min(-dr, 0))
    src_cols = slice(max(dc, 0), cols + min(dc, 0))
    dst_cols = slice(max(-dc, 0), cols + min(-dc, 0))
    out[..., dst_rows, dst_cols] = cells[..., src_rows, src_cols]
    return out


def shift(g: Grid, dr: int, dc: int, t: int = 1) -> Grid:
    """Read shift by t*(dr, dc): content travels by -t*(dr, dc)."""
    if t < 0:
        raise ValueError(f"Shift count must be non-negative, got {t}")
    return Grid(gather(g.cells, dr * t, dc * t))


def random_grid(rows: int, cols: int, density: float, seed: int) -> Grid:
    """Seeded Bernoulli fill.

    Draws come from numpy's legacy MT19937 stream (``RandomState``), which numpy keeps
    bit-for-bit stable across releases and platforms. Seeds must lie in [0, 2**32).
    """
    _check_shape(rows, cols)
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"Density must lie in [0, 1], got {density}")
    draws = np.random.RandomState(seed).random_sample((rows, cols))
    return Grid(torch.from_numpy(draws < density).to(CELL_DTYPE))
