"""Sweeper's gathering: four axis phases per iteration pull every one toward
a destination point.

xor mode transcribes each phase as a hybrid XOR step with one rule per
half-plane. guarded mode moves each one a single cell in its phase direction
when the target is empty before the phase; targets claimed twice keep both
claimants in place. Guarded moves never cross the phase axis.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import torch
from tqdm import tqdm

from .automaton import HybridSpec, step_hybrid
from .grid import CELL_DTYPE, Grid, gather
from .rules import OFFSETS

MODES = ("guarded", "xor")
SUPPORTED_ANGLE = 45

# (axis, rule for the side holding the axis, rule for the far side, diagonal)
_SEMANTIC_PHASES = (
    ("horizontal", 128, 8, False),
    ("diagonal", 256, 16, True),
    ("vertical", 32, 2, False),
    ("anti-diagonal", 64, 4, True),
)
_LITERAL_PHASES = (
    ("horizontal", 128, 8, False),
    ("diagonal", 16, 256, True),
    ("vertical", 32, 2, False),
    ("anti-diagonal", 64, 4, True),
)


@dataclass(frozen=True)
class SweepConfig:
    destination: Tuple[int, int]
    angle: int = SUPPORTED_ANGLE
    iterations: int = 0
    mode: str = "guarded"
    literal_pairing: bool = False
    freeze_border: bool = True

    @property
    def rotations(self) -> int:
        return 360 // (2 * self.angle)

    def validate(self, g: Grid):
        x, y = self.destination
        if not (0 <= x < g.rows and 0 <= y < g.cols):
            raise ValueError(f"Destination ({x}, {y}) lies outside a {g.rows}x{g.cols} grid")
        if self.angle != SUPPORTED_ANGLE:
            raise ValueError(f"Only a {SUPPORTED_ANGLE} degree rotation is supported, got {self.angle}")
        if self.mode not in MODES:
            raise ValueError(f"Unknown sweep mode: {self.mode}. Use one of {', '.join(MODES)}")
        if self.iterations < 0:
            raise ValueError(f"Iteration count must be non-negative, got {self.iterations}")

    def phases(self):
        return _LITERAL_PHASES if self.literal_pairing else _SEMANTIC_PHASES


@dataclass(frozen=True)
class SweepSample:
    population: int
    distance: int
    radius: int


@dataclass
class SweepMetrics:
    samples: List[SweepSample] = field(default_factory=list)

    @property
    def populations(self) -> List[int]:
        return [s.population for s in self.samples]

    @property
    def distances(self) -> List[int]:
        return [s.distance for s in self.samples]

    @property
    def radii(self) -> List[int]:
        return [s.radius for s in self.samples]

    def __len__(self) -> int:
        return len(self.samples)


@dataclass
class StableSweep:
    grid: Grid
    metrics: SweepMetrics
    iterations: int
    stable: bool


def _chebyshev(g: Grid, cfg: SweepConfig) -> torch.Tensor:
    x, y = cfg.destination
    i = torch.arange(g.rows).unsqueeze(1)
    j = torch.arange(g.cols).unsqueeze(0)
    return torch.maximum((i - x).abs(), (j - y).abs())


def metrics(g: Grid, cfg: SweepConfig) -> SweepSample:
    occupied = g.cells.bool()
    population = int(occupied.sum())
    if population == 0:
        return SweepSample(0, 0, 0)
    distances = _chebyshev(g, cfg)[occupied]
    return SweepSample(population, int(distances.sum()), int(distances.max()))


def _axis_offset(axis: str, m: int, n: int, x: int, y: int) -> torch.Tensor:
    i = torch.arange(m).unsqueeze(1).expand(m, n)
    j = torch.arange(n).unsqueeze(0).expand(m, n)
    if axis == "horizontal":
        return i - x
    if axis == "vertical":
        return j - y
    if axis == "diagonal":
        return (i - j) - (x - y)
    return (i + j) - (x + y)


def _border(m: int, n: int) -> torch.Tensor:
    mask = torch.zeros((m, n), dtype=torch.bool)
    mask[0, :] = True
    mask[-1, :] = True
    mask[:, 0] = True
    mask[:, -1] = True
    return mask


def _xor_phase(cells: torch.Tensor, side: torch.Tensor, near: int, far: int, frozen: torch.Tensor) -> torch.Tensor:
    stepped = step_hybrid(Grid(cells), HybridSpec.from_regions(side <= 0, near, far)).cells
    return torch.where(frozen, torch.ones_like(stepped), stepped)


def _guarded_phase(
    cells: torch.Tensor, side: torch.Tensor, near: int, far: int, reach: int, border: torch.Tensor
) -> torch.Tensor:
    occupied = cells.bool()
    movable = occupied & ~border
    free = ~occupied
    moved_from = torch.zeros_like(occupied)
    arrivals = []
    for rule, region in ((near, side <= -reach), (far, side >= reach)):
        dr, dc = OFFSETS[rule]
        # a rule reading from (dr, dc) carries content by (-dr, -dc)
        arrivals.append((gather(movable & region, dr, dc), dr, dc))
    claims = sum(target.to(torch.int64) for target, _, _ in arrivals)
    # frozen border cells never take new ones
    granted = claims.eq(1) & free & ~border
    for target, dr, dc in arrivals:
        moved_from |= gather(target & granted, -dr, -dc)
    return ((occupied & ~moved_from) | granted).to(CELL_DTYPE)


def sweep_iteration(g: Grid, cfg: SweepConfig) -> Grid:
    cfg.validate(g)
    x, y = cfg.destination
    border = _border(g.rows, g.cols) if cfg.freeze_border else torch.zeros(g.shape, dtype=torch.bool)
    cells = g.cells
    for axis, near, far, diagonal in cfg.phases():
        side = _axis_offset(axis, g.rows, g.cols, x, y)
        if cfg.mode == "xor":
            cells = _xor_phase(cells, side, near, far, border & cells.bool())
        else:
            cells = _guarded_phase(cells, side, near, far, 2 if diagonal else 1, border)
    return Grid(cells)


def sweep(
    g: Grid,
    cfg: SweepConfig,
    callback: Optional[Callable[[int, Grid, SweepSample], None]] = None,
    progress: bool = False,
) -> Tuple[Grid, SweepMetrics]:
    cfg.validate(g)
    record = SweepMetrics([metrics(g, cfg)])
    if callback is not None:
        callback(0, g, record.samples[0])
    for it in tqdm(range(1, cfg.iterations + 1), desc="sweep", disable=not progress):
        g = sweep_iteration(g, cfg)
        record.samples.append(metrics(g, cfg))
        if callback is not None:
            callback(it, g, record.samples[-1])
    return g, record


def sweep_until_stable(g: Grid, cfg: SweepConfig, max_iterations: int) -> StableSweep:
    cfg.validate(g)
    record = SweepMetrics([metrics(g, cfg)])
    for it in range(1, max_iterations + 1):
        following = sweep_iteration(g, cfg)
        if following == g:
            return StableSweep(g, record, it - 1, True)
        g = following
        record.samples.append(metrics(g, cfg))
    return StableSweep(g, record, max_iterations, False)


def scatter(m: int, n: int, count: int, seed: int, margin: int = 0) -> Grid:
    """count ones at distinct seeded positions at least margin cells from the border."""
    inner_rows, inner_cols = m - 2 * margin, n - 2 * margin
    if inner_rows <= 0 or inner_cols <= 0:
        raise ValueError(f"Margin {margin} leaves no room in a {m}x{n} grid")
    if count < 0 or count > inner_rows * inner_cols:
        raise ValueError(f"Cannot place {count} ones in {inner_rows * inner_cols} cells")
    generator = torch.Generator().manual_seed(seed)
    picks = torch.randperm(inner_rows * inner_cols, generator=generator)[:count]
    cells = torch.zeros((m, n), dtype=CELL_DTYPE)
    cells[picks // inner_cols + margin, picks % inner_cols + margin] = 1
    return Grid(cells)
