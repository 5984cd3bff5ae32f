"""Dense binary matrices over GF(2).

Entries live in a uint8 torch tensor holding 0/1. Products go through a float
matmul reduced mod 2, which is exact while the inner dimension stays below
2**24.
"""

from typing import List, Optional, Tuple

import torch

ENTRY_DTYPE = torch.uint8


class BitMatrix:
    entries: torch.Tensor

    def __init__(self, entries: torch.Tensor):
        if not isinstance(entries, torch.Tensor):
            entries = torch.as_tensor(entries)
        if entries.dim() != 2 or entries.shape[0] == 0 or entries.shape[1] == 0:
            raise ValueError(f"BitMatrix needs a non-empty 2-D array, got shape {tuple(entries.shape)}")
        if entries.is_floating_point():
            raise ValueError("BitMatrix entries must be integers or booleans")
        if entries.dtype != ENTRY_DTYPE:
            entries = entries.to(torch.int64)
        if ((entries != 0) & (entries != 1)).any():
            raise ValueError("BitMatrix entries must be 0 or 1")
        self.entries = entries.to(ENTRY_DTYPE).contiguous()

    @classmethod
    def from_rows(cls, rows: List[List[int]]) -> "BitMatrix":
        return cls(torch.tensor(rows, dtype=torch.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def get(self, i: int, j: int) -> int:
        return int(self.entries[i, j])

    def ones(self) -> List[Tuple[int, int]]:
        return [(int(i), int(j)) for i, j in self.entries.nonzero().tolist()]

    def row_support(self, i: int) -> List[int]:
        return self.entries[i].nonzero().flatten().tolist()

    def to_rows(self) -> List[List[int]]:
        return self.entries.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(torch.equal(self.entries, other.entries))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        return add(self, other)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return multiply(self, other)

    @property
    def T(self) -> "BitMatrix":
        return transpose(self)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, ones={int(self.entries.sum())})"


def identity(size: int) -> BitMatrix:
    return BitMatrix(torch.eye(size, dtype=ENTRY_DTYPE))


def zeros(rows: int, cols: Optional[int] = None) -> BitMatrix:
    return BitMatrix(torch.zeros((rows, rows if cols is None else cols), dtype=ENTRY_DTYPE))


def _mod2_product(a: torch.Tensor, b: torch.Tensor) -> torch.Tensor:
    product = a.to(torch.float32) @ b.to(torch.float32)
    return product.to(torch.int64).remainder(2).to(ENTRY_DTYPE)


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise ValueError(f"Cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return BitMatrix(_mod2_product(a.entries, b.entries))


def multiply_vectors(a: BitMatrix, vectors: torch.Tensor) -> torch.Tensor:
    """Apply a to each column of a (cols x k) 0/1 tensor."""
    if vectors.shape[0] != a.cols:
        raise ValueError(f"Cannot apply {a.rows}x{a.cols} matrix to vectors of length {vectors.shape[0]}")
    return _mod2_product(a.entries, vectors)


def transpose(a: BitMatrix) -> BitMatrix:
    return BitMatrix(a.entries.t().contiguous())


def add(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.shape != b.shape:
        raise ValueError(f"Cannot add {a.rows}x{a.cols} and {b.rows}x{b.cols}")
    return BitMatrix(a.entries ^ b.entries)


def diagonal(a: BitMatrix, k: int = 0) -> List[int]:
    """The k-th diagonal (k > 0 above the main diagonal)."""
    return torch.diagonal(a.entries, offset=k).tolist()


def _eliminate(work: torch.Tensor, pivot_limit: int) -> List[int]:
    """Reduce work in place to reduced row-echelon form; returns pivot columns."""
    rows = work.shape[0]
    pivots = []
    r = 0
    for c in range(pivot_limit):
        if r == rows:
            break
        below = work[r:, c].nonzero()
        if below.numel() == 0:
            continue
        p = r + int(below[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        hits = work[:, c].bool()
        hits[r] = False
        if hits.any():
            work[hits] ^= work[r]
        pivots.append(c)
        r += 1
    return pivots


def rank(a: BitMatrix) -> int:
    work = a.entries.clone()
    return len(_eliminate(work, a.cols))


def inverse(a: BitMatrix) -> Optional[BitMatrix]:
    """Inverse over GF(2), or None when a is singular."""
    if not a.is_square():
        raise ValueError(f"Only square matrices have inverses, got {a.rows}x{a.cols}")
    n = a.rows
    work = torch.cat([a.entries.clone(), torch.eye(n, dtype=ENTRY_DTYPE)], dim=1)
    pivots = _eliminate(work, n)
    if len(pivots) < n:
        return None
    return BitMatrix(work[:, n:].contiguous())


def is_invertible(a: BitMatrix) -> bool:
    return a.is_square() and rank(a) == a.rows


def power(a: BitMatrix, p: int) -> BitMatrix:
    if not a.is_square():
        raise ValueError(f"Only square matrices have powers, got {a.rows}x{a.cols}")
    if p < 0:
        raise ValueError(f"Exponent must be non-negative, got {p}")
    result = identity(a.rows)
    base = a
    while p:
        if p & 1:
            result = multiply(result, base)
        p >>= 1
        if p:
            base = multiply(base, base)
    return result
