"""Invertibility of rule matrices and exhaustive state-transition structure."""

from collections import deque
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import torch
from tqdm import tqdm

from .automaton import step_cells
from .gf2 import identity, multiply, rank
from .grid import CELL_DTYPE
from .matrices import rule_matrix
from .rules import all_rules, check_rule, group_of, is_half_plane

Size = Tuple[int, int]

MAX_GRAPH_CELLS = 16
MAX_ORDER_ITERATIONS = 1 << 20

REFERENCE_REVERSIBLE_RULES: Tuple[int, ...] = (
    1,
    3, 5, 9, 17, 33, 65, 129, 257,
    7, 11, 19, 13, 21, 25, 97, 161, 289, 193, 321, 385,
    15, 23, 29, 27, 225, 353, 417, 449,
    31, 481,
)


def sizes_between(rows: Iterable[int], cols: Iterable[int]) -> List[Size]:
    sizes = [(m, n) for m in rows for n in cols]
    if not sizes:
        raise ValueError("Size ranges must be non-empty")
    return sizes


def unipotent_rules() -> Set[int]:
    """Rule 1 plus neighbours inside one open half-plane: identity plus a strictly triangular part."""
    return {rule for rule in all_rules() if is_half_plane(rule)}


def rule_ranks(rule: int, sizes: Sequence[Size], stop_at_singular: bool = False) -> Dict[Size, int]:
    ranks = {}
    for m, n in sizes:
        ranks[(m, n)] = rank(rule_matrix(rule, m, n))
        if stop_at_singular and ranks[(m, n)] < m * n:
            break
    return ranks


def always_invertible_set(
    m_range: Iterable[int], n_range: Iterable[int], progress: bool = False
) -> Set[int]:
    sizes = sizes_between(m_range, n_range)
    result = set()
    for rule in tqdm(all_rules(), desc="rules", disable=not progress):
        ranks = rule_ranks(rule, sizes, stop_at_singular=True)
        if len(ranks) == len(sizes) and all(ranks[(m, n)] == m * n for m, n in sizes):
            result.add(rule)
    return result


class RuleRecord:
    def __init__(self, rule: int, ranks: Dict[Size, int]):
        self.rule = rule
        self.group = group_of(rule)
        self.ranks = ranks

    def singular_sizes(self) -> List[Size]:
        return [(m, n) for (m, n), r in self.ranks.items() if r < m * n]

    @property
    def always_invertible(self) -> bool:
        return not self.singular_sizes()

    def verdict(self) -> str:
        singular = self.singular_sizes()
        if not singular:
            return "reversible"
        m, n = singular[0]
        return f"singular@{m}x{n}"


class ReversibilityReport:
    sizes: List[Size]
    records: Dict[int, RuleRecord]

    def __init__(self, sizes: List[Size], records: Dict[int, RuleRecord]):
        self.sizes = sizes
        self.records = records

    def always_invertible(self) -> Set[int]:
        return {rule for rule, record in self.records.items() if record.always_invertible}

    def predicted(self) -> Set[int]:
        """Half-plane rules among the reported ones: unit triangular, so invertible at every size."""
        return unipotent_rules() & set(self.records)

    def missing_reference(self) -> List[int]:
        listed = set(REFERENCE_REVERSIBLE_RULES) & set(self.records)
        return sorted(listed - self.always_invertible())

    def contains_reference(self) -> bool:
        return not self.missing_reference()

    def extra_rules(self) -> List[int]:
        return sorted(self.always_invertible() - set(REFERENCE_REVERSIBLE_RULES))

    def matches_unipotent(self) -> bool:
        return self.always_invertible() == self.predicted()

    def render(self) -> str:
        header = ["rule", "group"] + [f"{m}x{n}" for m, n in self.sizes] + ["verdict"]
        lines = ["\t".join(header)]
        for rule in sorted(self.records):
            record = self.records[rule]
            ranks = [str(record.ranks[size]) for size in self.sizes]
            lines.append("\t".join([str(rule), str(record.group)] + ranks + [record.verdict()]))
        found = self.always_invertible()
        lines.append("")
        lines.append(f"# always invertible ({len(found)}): {_join(sorted(found))}")
        missing = self.missing_reference()
        lines.append(f"# contains the {len(REFERENCE_REVERSIBLE_RULES)} listed rules: {'yes' if not missing else 'no'}")
        if missing:
            lines.append(f"# listed but singular: {_join(missing)}")
        extra = self.extra_rules()
        if extra:
            lines.append(f"# beyond the listed rules ({len(extra)}): {_join(extra)}")
            lines.append(
                "#   each is rule 1 xor neighbours inside an open half-plane, "
                "triangular when cells are ordered along that half-plane's normal"
            )
        lines.append(
            f"# equals the half-plane rules (unit triangular, determinant 1 at every size): "
            f"{'yes' if self.matches_unipotent() else 'no'}"
        )
        unexplained = sorted(found - self.predicted())
        if unexplained:
            lines.append(f"# invertible at these sizes only: {_join(unexplained)}")
        failed = sorted(self.predicted() - found)
        if failed:
            lines.append(f"# half-plane but singular: {_join(failed)}")
        return "\n".join(lines) + "\n"


def _join(rules: Iterable[int]) -> str:
    return " ".join(str(r) for r in rules)


def reversibility_report(
    sizes: Sequence[Size], rules: Optional[Iterable[int]] = None, progress: bool = False
) -> ReversibilityReport:
    sizes = list(sizes)
    if not sizes:
        raise ValueError("Size list must be non-empty")
    chosen = list(all_rules()) if rules is None else sorted(set(check_rule(r) for r in rules))
    records = {}
    for rule in tqdm(chosen, desc="ranks", disable=not progress):
        records[rule] = RuleRecord(rule, rule_ranks(rule, sizes))
    return ReversibilityReport(sizes, records)


def _lcm(values: Iterable[int]) -> int:
    result = 1
    for v in values:
        result = result * v // gcd(result, v)
    return result


class StateGraph:
    """Functional graph of a uniform rule over all 2^(mn) states.

    State k is the grid whose row-major flattening is the bits of k, most
    significant bit first.
    """

    rows: int
    cols: int
    successor: List[int]
    cycles: List[List[int]]
    depth: List[int]

    def __init__(self, rows: int, cols: int, successor: List[int]):
        self.rows = rows
        self.cols = cols
        self.successor = successor
        self.cycles = _find_cycles(successor)
        self.depth = _transient_depths(successor, self.cycles)

    @property
    def state_count(self) -> int:
        return len(self.successor)

    @property
    def attractors(self) -> int:
        return len(self.cycles)

    def cycle_lengths(self) -> List[int]:
        return sorted(len(c) for c in self.cycles)

    def transient_count(self) -> int:
        return sum(1 for d in self.depth if d > 0)

    def max_depth(self) -> int:
        return max(self.depth)

    def is_permutation(self) -> bool:
        return self.transient_count() == 0

    def period(self) -> int:
        return _lcm(self.cycle_lengths())

    def __repr__(self) -> str:
        return (
            f"StateGraph({self.rows}x{self.cols}, states={self.state_count}, "
            f"cycles={self.attractors}, transients={self.transient_count()})"
        )


def _find_cycles(successor: List[int]) -> List[List[int]]:
    state = [0] * len(successor)  # 0 new, 1 on current walk, 2 finished
    cycles = []
    for start in range(len(successor)):
        if state[start]:
            continue
        walk = []
        s = start
        while state[s] == 0:
            state[s] = 1
            walk.append(s)
            s = successor[s]
        if state[s] == 1:
            cycles.append(walk[walk.index(s):])
        for w in walk:
            state[w] = 2
    return cycles


def _transient_depths(successor: List[int], cycles: List[List[int]]) -> List[int]:
    predecessors = [[] for _ in successor]
    for s, t in enumerate(successor):
        predecessors[t].append(s)
    depth = [-1] * len(successor)
    queue = deque()
    for cycle in cycles:
        for s in cycle:
            depth[s] = 0
            queue.append(s)
    while queue:
        s = queue.popleft()
        for p in predecessors[s]:
            if depth[p] < 0:
                depth[p] = depth[s] + 1
                queue.append(p)
    return depth


def enumerate_states(m: int, n: int) -> torch.Tensor:
    cells = m * n
    codes = torch.arange(1 << cells, dtype=torch.int64).unsqueeze(1)
    weights = 1 << torch.arange(cells - 1, -1, -1, dtype=torch.int64)
    bits = (codes & weights).ne(0).to(CELL_DTYPE)
    return bits.reshape(-1, m, n)


def encode_states(states: torch.Tensor) -> torch.Tensor:
    cells = states.shape[-1] * states.shape[-2]
    flat = states.reshape(states.shape[0], cells).to(torch.int64)
    weights = 1 << torch.arange(cells - 1, -1, -1, dtype=torch.int64)
    return (flat * weights).sum(dim=1)


def state_graph(rule: int, m: int, n: int) -> StateGraph:
    check_rule(rule)
    if m <= 0 or n <= 0:
        raise ValueError(f"Grid size must be positive, got {m}x{n}")
    if m * n > MAX_GRAPH_CELLS:
        raise ValueError(
            f"State graph of a {m}x{n} grid has 2^{m * n} states; at most {MAX_GRAPH_CELLS} cells are enumerated"
        )
    states = enumerate_states(m, n)
    successor = encode_states(step_cells(states, rule)).tolist()
    return StateGraph(m, n, successor)


def order_of(rule: int, m: int, n: int, max_iterations: int = MAX_ORDER_ITERATIONS) -> Optional[int]:
    """Least p >= 1 with T^p = I, or None when the rule matrix is singular."""
    t = rule_matrix(rule, m, n)
    if rank(t) < m * n:
        return None
    eye = identity(m * n)
    current = t
    for p in range(1, max_iterations + 1):
        if current == eye:
            return p
        current = multiply(current, t)
    raise RuntimeError(f"Order of rule {rule} on {m}x{n} exceeds {max_iterations} iterations")
