"""Rule matrices: the mn x mn GF(2) matrices whose product with the row-major
flattened grid performs one synchronous step."""

from typing import List, Sequence, Tuple

import torch

from .automaton import HybridSpec
from .gf2 import ENTRY_DTYPE, BitMatrix, multiply_vectors
from .grid import Grid
from .rules import FUNDAMENTAL_RULES, OFFSETS, check_rule, decompose, is_fundamental

# block of T_R each neighbour weight contributes to, and the n x n pattern it adds
_IN_ROW = {1: "I", 2: "T1", 32: "T2"}
_BELOW = {8: "I", 4: "T1", 16: "T2"}
_ABOVE = {128: "I", 256: "T1", 64: "T2"}


class DependencyMap:
    """For every flat cell index, the flat indices whose XOR is its next state.

    Indices are 0-based here; the text format uses 1-based indices.
    """

    rows: int
    cols: int
    cells: Tuple[Tuple[int, ...], ...]

    def __init__(self, rows: int, cols: int, cells: Sequence[Sequence[int]]):
        if rows <= 0 or cols <= 0:
            raise ValueError(f"Dependency map needs a non-empty grid, got {rows}x{cols}")
        size = rows * cols
        if len(cells) != size:
            raise ValueError(f"Dependency map lists {len(cells)} cells, a {rows}x{cols} grid has {size}")
        canonical = []
        for i, deps in enumerate(cells):
            seen = set()
            for d in deps:
                if not isinstance(d, int) or d < 0 or d >= size:
                    raise ValueError(f"Cell {i + 1} depends on index {_one_based(d)}, outside 1..{size}")
                if d in seen:
                    raise ValueError(f"Cell {i + 1} lists index {d + 1} twice")
                seen.add(d)
            canonical.append(tuple(sorted(deps)))
        self.rows = rows
        self.cols = cols
        self.cells = tuple(canonical)

    @classmethod
    def from_one_based(cls, rows: int, cols: int, cells: Sequence[Sequence[int]]) -> "DependencyMap":
        shifted = []
        for i, deps in enumerate(cells):
            for d in deps:
                if d < 1:
                    raise ValueError(f"Cell {i + 1} depends on index {d}, indices start at 1")
            shifted.append([d - 1 for d in deps])
        return cls(rows, cols, shifted)

    def one_based(self) -> List[List[int]]:
        return [[d + 1 for d in deps] for deps in self.cells]

    def __len__(self) -> int:
        return len(self.cells)

    def __getitem__(self, i: int) -> Tuple[int, ...]:
        return self.cells[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DependencyMap):
            return NotImplemented
        return (self.rows, self.cols, self.cells) == (other.rows, other.cols, other.cells)

    def __repr__(self) -> str:
        return f"DependencyMap({self.rows}x{self.cols})"


def _one_based(d) -> str:
    return str(d + 1) if isinstance(d, int) else repr(d)


def _flat_indices(m: int, n: int) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    i = torch.arange(m).unsqueeze(1).expand(m, n)
    j = torch.arange(n).unsqueeze(0).expand(m, n)
    return i, j, (i * n + j)


def _check_size(m: int, n: int):
    if m <= 0 or n <= 0:
        raise ValueError(f"Grid size must be positive, got {m}x{n}")


def basic_matrix(f: int, m: int, n: int) -> BitMatrix:
    """M_f: row i has a one at the flat index of the neighbour cell i reads."""
    check_rule(f)
    if not is_fundamental(f):
        raise ValueError(f"Rule {f} is not fundamental; use one of {FUNDAMENTAL_RULES}")
    _check_size(m, n)
    dr, dc = OFFSETS[f]
    i, j, flat = _flat_indices(m, n)
    si, sj = i + dr, j + dc
    inside = (si >= 0) & (si < m) & (sj >= 0) & (sj < n)
    entries = torch.zeros((m * n, m * n), dtype=ENTRY_DTYPE)
    entries[flat[inside], (si * n + sj)[inside]] = 1
    return BitMatrix(entries)


def rule_matrix(rule: int, m: int, n: int) -> BitMatrix:
    _check_size(m, n)
    entries = torch.zeros((m * n, m * n), dtype=ENTRY_DTYPE)
    for f in sorted(decompose(rule)):
        entries ^= basic_matrix(f, m, n).entries
    return BitMatrix(entries)


def _shift_matrix(k: int, offset: int) -> torch.Tensor:
    # kron needs contiguous operands
    return torch.diag(torch.ones(k - 1, dtype=torch.int64), offset).contiguous()


def _block(rule: int, table: dict, n: int) -> torch.Tensor:
    patterns = {"I": torch.eye(n, dtype=torch.int64), "T1": _shift_matrix(n, 1), "T2": _shift_matrix(n, -1)}
    block = torch.zeros((n, n), dtype=torch.int64)
    for weight, name in table.items():
        if rule & weight:
            block = block + patterns[name]
    return block


def block_rule_matrix(rule: int, m: int, n: int) -> BitMatrix:
    """Block tri-diagonal assembly: D on the diagonal, U above, L below."""
    check_rule(rule)
    _check_size(m, n)
    d = _block(rule, _IN_ROW, n)
    u = _block(rule, _BELOW, n)
    lower = _block(rule, _ABOVE, n)
    entries = (
        torch.kron(torch.eye(m, dtype=torch.int64), d)
        + torch.kron(_shift_matrix(m, 1), u)
        + torch.kron(_shift_matrix(m, -1), lower)
    )
    return BitMatrix(entries.remainder(2))


def hybrid_matrix(dep: DependencyMap, m: int, n: int) -> BitMatrix:
    if (dep.rows, dep.cols) != (m, n):
        raise ValueError(f"Dependency map is for {dep.rows}x{dep.cols}, not {m}x{n}")
    size = m * n
    entries = torch.zeros((size, size), dtype=ENTRY_DTYPE)
    for i, deps in enumerate(dep.cells):
        for d in deps:
            if d < 0 or d >= size:
                raise ValueError(f"Cell {i + 1} depends on index {d + 1}, outside 1..{size}")
            entries[i, d] = 1
    return BitMatrix(entries)


def dependency_map_from_rules(spec: HybridSpec) -> DependencyMap:
    m, n = spec.rows, spec.cols
    cells = []
    for i in range(m):
        for j in range(n):
            deps = []
            for f in sorted(decompose(spec.rule_at(i, j))):
                dr, dc = OFFSETS[f]
                si, sj = i + dr, j + dc
                if 0 <= si < m and 0 <= sj < n:
                    deps.append(si * n + sj)
            cells.append(deps)
    return DependencyMap(m, n, cells)


def hybrid_matrix_from_rules(spec: HybridSpec) -> BitMatrix:
    return hybrid_matrix(dependency_map_from_rules(spec), spec.rows, spec.cols)


def to_dependency_map(mat: BitMatrix, m: int, n: int) -> DependencyMap:
    if mat.shape != (m * n, m * n):
        raise ValueError(f"Expected a {m * n}x{m * n} matrix for a {m}x{n} grid, got {mat.rows}x{mat.cols}")
    return DependencyMap(m, n, [mat.row_support(i) for i in range(mat.rows)])


def apply(mat: BitMatrix, g: Grid) -> Grid:
    size = g.rows * g.cols
    if mat.shape != (size, size):
        raise ValueError(f"A {mat.rows}x{mat.cols} matrix cannot act on a {g.rows}x{g.cols} grid")
    column = g.flatten().unsqueeze(1)
    return Grid.unflatten(multiply_vectors(mat, column).squeeze(1), g.rows, g.cols)


def boundary_sequence(kind: str, m: int, n: int) -> List[int]:
    """S1 or S2 for an m x n grid, sized to the diagonal it describes.

    S1 (length mn-1) marks cells that have a right-hand neighbour; S2 (length
    mn-n+1) marks cells of rows 0..m-2 that have a bottom-left neighbour.
    """
    _check_size(m, n)
    kind = kind.upper()
    if kind == "S1":
        return [0 if (k + 1) % n == 0 else 1 for k in range(m * n - 1)]
    if kind == "S2":
        return [0 if k % n == 0 else 1 for k in range(m * n - n + 1)]
    raise ValueError(f"Unknown boundary sequence: {kind}. Use 'S1' or 'S2'")
