from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

RULE_COUNT = 512

FUNDAMENTAL_RULES: Tuple[int, ...] = (1, 2, 4, 8, 16, 32, 64, 128, 256)

# weight -> (row delta, column delta); rows grow downward, columns rightward
#   64 128 256
#   32   1   2
#   16   8   4
OFFSETS: Dict[int, Tuple[int, int]] = {
    1: (0, 0),
    2: (0, 1),
    4: (1, 1),
    8: (1, 0),
    16: (1, -1),
    32: (0, -1),
    64: (-1, -1),
    128: (-1, 0),
    256: (-1, 1),
}

# direction the image content travels -> group-1 rule producing it
TRANSLATION_RULES: Dict[str, int] = {
    "top": 8,
    "bottom": 128,
    "left": 2,
    "right": 32,
    "top-left": 4,
    "top-right": 16,
    "bottom-left": 256,
    "bottom-right": 64,
}

_OPPOSITES = {
    "top": "bottom",
    "left": "right",
    "top-left": "bottom-right",
    "top-right": "bottom-left",
}
_OPPOSITES.update({v: k for k, v in list(_OPPOSITES.items())})

# offsets after (resp. before) the centre cell in row-major order
FORWARD_RULES: Tuple[int, ...] = (2, 4, 8, 16)
BACKWARD_RULES: Tuple[int, ...] = (32, 64, 128, 256)


def check_rule(rule: int) -> int:
    if isinstance(rule, bool) or not isinstance(rule, int):
        raise TypeError(f"Rule must be an integer, got {type(rule).__name__}")
    if rule < 0 or rule >= RULE_COUNT:
        raise ValueError(f"Rule {rule} is outside 0..{RULE_COUNT - 1}")
    return rule


def decompose(rule: int) -> Set[int]:
    check_rule(rule)
    return {weight for weight in FUNDAMENTAL_RULES if rule & weight}


def group_of(rule: int) -> int:
    return bin(check_rule(rule)).count("1")


def xor_rules(a: int, b: int) -> int:
    return check_rule(a) ^ check_rule(b)


def offsets(rule: int) -> List[Tuple[int, int]]:
    """Neighbour offsets a rule reads from, in ascending weight order."""
    check_rule(rule)
    return [OFFSETS[weight] for weight in FUNDAMENTAL_RULES if rule & weight]


def is_fundamental(rule: int) -> bool:
    return rule in OFFSETS


def all_rules() -> range:
    return range(RULE_COUNT)


def rules_in_group(group: int) -> List[int]:
    if group < 0 or group > len(FUNDAMENTAL_RULES):
        raise ValueError(f"Group {group} is outside 0..{len(FUNDAMENTAL_RULES)}")
    rules = []
    for chosen in combinations(FUNDAMENTAL_RULES, group):
        rules.append(sum(chosen))
    return sorted(rules)


def is_one_sided(rule: int) -> bool:
    """True for rule 1 combined with neighbours from one row-major side only."""
    check_rule(rule)
    if not rule & 1:
        return False
    rest = decompose(rule) - {1}
    return rest <= set(FORWARD_RULES) or rest <= set(BACKWARD_RULES)


# normals (a, b) scored as a*dr + b*dc; every run of at most four consecutive
# neighbours around the ring scores positive under one of them
_HALF_PLANE_NORMALS: Tuple[Tuple[int, int], ...] = tuple(
    (a, b) for a in range(-2, 3) for b in range(-2, 3) if (a, b) != (0, 0)
)


def half_plane_normal(rule: int) -> Optional[Tuple[int, int]]:
    """A normal (a, b) with a*dr + b*dc > 0 for every neighbour offset of the rule, if any.

    Ordering cells by a*i + b*j then makes the neighbour part of the rule matrix strictly
    triangular. Rule 0 and the bare centre return (0, 1).
    """
    check_rule(rule)
    rest = [OFFSETS[w] for w in decompose(rule) - {1}]
    for a, b in ((0, 1),) + _HALF_PLANE_NORMALS:
        if all(a * dr + b * dc > 0 for dr, dc in rest):
            return a, b
    return None


def is_half_plane(rule: int) -> bool:
    """True for rule 1 combined with neighbours that all lie in one open half-plane."""
    return bool(rule & 1) and half_plane_normal(rule) is not None


def translation_rule(direction: str) -> int:
    key = direction.strip().lower().replace("_", "-").replace(" ", "-")
    if key not in TRANSLATION_RULES:
        raise ValueError(
            f"Unknown direction: {direction}. Use one of {', '.join(TRANSLATION_RULES)}"
        )
    return TRANSLATION_RULES[key]


def opposite_direction(direction: str) -> str:
    translation_rule(direction)
    key = direction.strip().lower().replace("_", "-").replace(" ", "-")
    return _OPPOSITES[key]
