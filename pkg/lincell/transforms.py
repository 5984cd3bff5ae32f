"""Image-level behaviour of linear rules: translation, replication at 2^k
steps, and the four-region hybrid procedures (zoom, thicken, thin)."""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import torch
from scipy import ndimage

from .automaton import HybridSpec, evolve, step_hybrid
from .grid import CELL_DTYPE, Grid, gather
from .rules import check_rule, offsets, translation_rule

SHAPE_KINDS = ("circle", "square", "plus", "rectangle", "custom")

# Hybrid(a, b, c, d) rule quadruples for the named procedures
PROCEDURES = {
    "zoom-in": (2, 32, 8, 128),
    "zoom-out": (32, 2, 128, 8),
    "thicken-horizontal": (2, 32, 1, 1),
    "thin-horizontal": (32, 2, 1, 1),
    "thicken-vertical": (1, 1, 8, 128),
    "thin-vertical": (1, 1, 128, 8),
}


@dataclass(frozen=True)
class RegionPartition:
    """A = columns < split_col, B = the rest; C = rows < split_row, D = the rest.

    The split line itself belongs to B and D. None means the grid centre.
    """

    split_row: Optional[int] = None
    split_col: Optional[int] = None

    def resolve(self, m: int, n: int) -> Tuple[int, int]:
        row = m // 2 if self.split_row is None else self.split_row
        col = n // 2 if self.split_col is None else self.split_col
        if not (0 <= row <= m and 0 <= col <= n):
            raise ValueError(f"Split ({row}, {col}) lies outside a {m}x{n} grid")
        return row, col


@dataclass(frozen=True)
class SeedShape:
    kind: str
    radius: int = 0
    side: int = 0
    height: int = 0
    width: int = 0
    length: int = 0
    breadth: int = 0
    center: Optional[Tuple[int, int]] = None
    pattern: Optional[Grid] = None


def translate(g: Grid, direction: str, t: int) -> Grid:
    return evolve(g, translation_rule(direction), t)


def replicate_prediction(g: Grid, rule: int, k: int) -> Grid:
    """XOR of copies of g, one per offset d of the rule, each read-shifted by 2^k * d."""
    check_rule(rule)
    if k < 1:
        raise ValueError(f"Replication exponent must be at least 1, got {k}")
    distance = 1 << k
    out = torch.zeros_like(g.cells)
    for dr, dc in offsets(rule):
        out ^= gather(g.cells, dr * distance, dc * distance)
    return Grid(out)


def copies_fit(g: Grid, rule: int, k: int) -> bool:
    """Every shifted copy keeps all of g's ones and no two copies overlap."""
    total = g.count()
    distance = 1 << k
    union = torch.zeros_like(g.cells)
    for dr, dc in offsets(rule):
        copy = gather(g.cells, dr * distance, dc * distance)
        if int(copy.sum()) != total or bool((union & copy).any()):
            return False
        union |= copy
    return True


def count_copies(g: Grid) -> int:
    """Number of 8-connected components of ones."""
    structure = np.ones((3, 3), dtype=int)
    _, components = ndimage.label(g.cells.numpy(), structure=structure)
    return int(components)


def hybrid4(g: Grid, a: int, b: int, c: int, d: int, part: Optional[RegionPartition] = None) -> Grid:
    part = part or RegionPartition()
    split_row, split_col = part.resolve(g.rows, g.cols)
    cols = torch.arange(g.cols).unsqueeze(0).expand(g.rows, g.cols)
    rows = torch.arange(g.rows).unsqueeze(1).expand(g.rows, g.cols)
    across = HybridSpec.from_regions(cols < split_col, a, b)
    down = HybridSpec.from_regions(rows < split_row, c, d)
    return step_hybrid(step_hybrid(g, across), down)


def procedure(g: Grid, name: str, part: Optional[RegionPartition] = None, steps: int = 1) -> Grid:
    if name not in PROCEDURES:
        raise ValueError(f"Unknown procedure: {name}. Use one of {', '.join(PROCEDURES)}")
    a, b, c, d = PROCEDURES[name]
    for _ in range(steps):
        g = hybrid4(g, a, b, c, d, part)
    return g


def zoom_in(g: Grid, part: Optional[RegionPartition] = None, steps: int = 1) -> Grid:
    return procedure(g, "zoom-in", part, steps)


def zoom_out(g: Grid, part: Optional[RegionPartition] = None, steps: int = 1) -> Grid:
    return procedure(g, "zoom-out", part, steps)


def thicken(g: Grid, axis: str = "horizontal", part: Optional[RegionPartition] = None, steps: int = 1) -> Grid:
    return procedure(g, f"thicken-{_axis(axis)}", part, steps)


def thin(g: Grid, axis: str = "horizontal", part: Optional[RegionPartition] = None, steps: int = 1) -> Grid:
    return procedure(g, f"thin-{_axis(axis)}", part, steps)


def _axis(axis: str) -> str:
    if axis not in ("horizontal", "vertical"):
        raise ValueError(f"Unknown axis: {axis}. Use 'horizontal' or 'vertical'")
    return axis


def _place(m: int, n: int, height: int, width: int, center: Optional[Tuple[int, int]]) -> Tuple[int, int]:
    if height <= 0 or width <= 0:
        raise ValueError(f"Shape extent must be positive, got {height}x{width}")
    if center is None:
        top, left = (m - height) // 2, (n - width) // 2
    else:
        top, left = center[0] - height // 2, center[1] - width // 2
    if top < 0 or left < 0 or top + height > m or left + width > n:
        raise ValueError(f"A {height}x{width} shape at ({top}, {left}) does not fit a {m}x{n} grid")
    return top, left


def seed(shape: SeedShape, m: int, n: int) -> Grid:
    if m <= 0 or n <= 0:
        raise ValueError(f"Grid size must be positive, got {m}x{n}")
    cells = torch.zeros((m, n), dtype=CELL_DTYPE)
    kind = shape.kind
    if kind in ("square", "rectangle"):
        height, width = (shape.side, shape.side) if kind == "square" else (shape.height, shape.width)
        top, left = _place(m, n, height, width, shape.center)
        cells[top:top + height, left:left + width] = 1
    elif kind == "plus":
        length, breadth = shape.length, shape.breadth
        if breadth <= 0 or breadth > length:
            raise ValueError(f"Plus breadth must lie in 1..{length}, got {breadth}")
        top, left = _place(m, n, length, length, shape.center)
        bar = top + (length - breadth) // 2
        column = left + (length - breadth) // 2
        cells[bar:bar + breadth, left:left + length] = 1
        cells[top:top + length, column:column + breadth] = 1
    elif kind == "circle":
        r = shape.radius
        if r < 0:
            raise ValueError(f"Circle radius must be non-negative, got {r}")
        ci, cj = shape.center if shape.center is not None else (m // 2, n // 2)
        if ci - r < 0 or cj - r < 0 or ci + r >= m or cj + r >= n:
            raise ValueError(f"A circle of radius {r} at ({ci}, {cj}) does not fit a {m}x{n} grid")
        i = torch.arange(m).unsqueeze(1)
        j = torch.arange(n).unsqueeze(0)
        cells = ((i - ci) ** 2 + (j - cj) ** 2 <= r * r).to(CELL_DTYPE)
    elif kind == "custom":
        if shape.pattern is None:
            raise ValueError("Custom seed needs a pattern grid")
        top, left = _place(m, n, shape.pattern.rows, shape.pattern.cols, shape.center)
        cells[top:top + shape.pattern.rows, left:left + shape.pattern.cols] = shape.pattern.cells
    else:
        raise ValueError(f"Unknown shape kind: {kind}. Use one of {', '.join(SHAPE_KINDS)}")
    return Grid(cells)
