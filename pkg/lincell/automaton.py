from typing import Sequence

import torch

from .grid import CELL_DTYPE, Grid, gather
from .rules import FUNDAMENTAL_RULES, OFFSETS, check_rule, offsets


class HybridSpec:
    """Per-cell rule assignment for a hybrid automaton."""

    assignment: torch.Tensor

    def __init__(self, assignment: torch.Tensor):
        if not isinstance(assignment, torch.Tensor):
            assignment = torch.as_tensor(assignment)
        if assignment.dim() != 2 or assignment.shape[0] == 0 or assignment.shape[1] == 0:
            raise ValueError(f"Hybrid assignment must be a non-empty matrix, got shape {tuple(assignment.shape)}")
        if assignment.is_floating_point():
            raise ValueError("Hybrid assignment must hold integer rule numbers")
        assignment = assignment.to(torch.int64)
        if ((assignment < 0) | (assignment > 511)).any():
            raise ValueError("Hybrid assignment holds rules outside 0..511")
        self.assignment = assignment.contiguous()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "HybridSpec":
        widths = {len(row) for row in rows}
        if len(widths) != 1:
            raise ValueError(f"Ragged rule rows: widths {sorted(widths)}")
        return cls(torch.tensor([list(row) for row in rows], dtype=torch.int64))

    @classmethod
    def uniform(cls, rule: int, rows: int, cols: int) -> "HybridSpec":
        check_rule(rule)
        return cls(torch.full((rows, cols), rule, dtype=torch.int64))

    @classmethod
    def by_rows(cls, row_rules: Sequence[int], cols: int) -> "HybridSpec":
        for rule in row_rules:
            check_rule(rule)
        column = torch.tensor(list(row_rules), dtype=torch.int64).unsqueeze(1)
        return cls(column.expand(-1, cols))

    @classmethod
    def from_regions(cls, mask: torch.Tensor, inside: int, outside: int) -> "HybridSpec":
        check_rule(inside)
        check_rule(outside)
        return cls(torch.where(mask.bool(), torch.tensor(inside), torch.tensor(outside)))

    @property
    def rows(self) -> int:
        return self.assignment.shape[0]

    @property
    def cols(self) -> int:
        return self.assignment.shape[1]

    def rule_at(self, i: int, j: int) -> int:
        return int(self.assignment[i, j])

    def is_uniform(self) -> bool:
        return bool((self.assignment == self.assignment[0, 0]).all())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HybridSpec):
            return NotImplemented
        return bool(torch.equal(self.assignment, other.assignment))

    def __repr__(self) -> str:
        return f"HybridSpec({self.rows}x{self.cols})"


def step_cells(cells: torch.Tensor, rule: int) -> torch.Tensor:
    """Synchronous uniform step over the last two axes; leading axes are a batch."""
    out = torch.zeros_like(cells)
    for dr, dc in offsets(rule):
        out ^= gather(cells, dr, dc)
    return out


def step_uniform(g: Grid, rule: int) -> Grid:
    return Grid(step_cells(g.cells, rule))


def step_hybrid(g: Grid, spec: HybridSpec) -> Grid:
    if (spec.rows, spec.cols) != g.shape:
        raise ValueError(
            f"Hybrid assignment is {spec.rows}x{spec.cols} but the grid is {g.rows}x{g.cols}"
        )
    out = torch.zeros_like(g.cells)
    for weight in FUNDAMENTAL_RULES:
        uses = (spec.assignment & weight).ne(0)
        if not uses.any():
            continue
        dr, dc = OFFSETS[weight]
        out ^= gather(g.cells, dr, dc) & uses.to(CELL_DTYPE)
    return Grid(out)


def evolve(g: Grid, rule: int, t: int) -> Grid:
    if t < 0:
        raise ValueError(f"Step count must be non-negative, got {t}")
    check_rule(rule)
    cells = g.cells
    for _ in range(t):
        cells = step_cells(cells, rule)
    return Grid(cells)


def evolve_hybrid(g: Grid, spec: HybridSpec, t: int) -> Grid:
    if t < 0:
        raise ValueError(f"Step count must be non-negative, got {t}")
    for _ in range(t):
        g = step_hybrid(g, spec)
    return g
