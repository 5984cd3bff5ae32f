from typing import Any, Dict

from ..command import Command, CommandArgument
from ..env import Environment
from ..formats import (
    format_dependency_map,
    format_matrix,
    parse_dependency_map,
    parse_matrix,
    read_rules_file,
    read_text,
)
from ..gf2 import rank
from ..matrices import (
    block_rule_matrix,
    hybrid_matrix,
    hybrid_matrix_from_rules,
    rule_matrix,
    to_dependency_map,
)
from .common import emit_text, failure, parse_size


class MatrixCommand(Command):
    def __init__(self):
        super().__init__("matrix")
        self.schema.register_argument(CommandArgument("rule", "Uniform rule number 0..511", False, int))
        self.schema.register_argument(CommandArgument("size", "Grid size as MxN", False, str))
        self.schema.register_argument(CommandArgument("rules_file", "Hybrid rules file", False, str))
        self.schema.register_argument(
            CommandArgument("deps", "Dependency map: line i lists the 1-based cells cell i reads", False, str)
        )
        self.schema.register_argument(CommandArgument("from_matrix", "Existing BitMatrix text file", False, str))
        self.schema.register_argument(
            CommandArgument("block", "Build a uniform rule matrix from D/U/L blocks", False, bool, default=False)
        )
        self.schema.register_argument(
            CommandArgument("emit", "What to write", False, str, default="matrix", choices=("matrix", "deps"))
        )
        self.schema.register_argument(CommandArgument("output", "Output text file (stdout when omitted)", False, str))

    def initialize(self, env: Environment):
        super().initialize(env)

    def description(self) -> str:
        return """`matrix` - Emit the mn x mn GF(2) matrix of a uniform rule (--rule, --size, \
optionally --block), a hybrid rules file, or a dependency map; or convert a matrix back \
to its dependency map with --from-matrix --emit deps."""

    def execute(self, input: Dict[str, Any]) -> Dict[str, Any]:
        try:
            sources = [k for k in ("rule", "rules_file", "deps", "from_matrix") if input.get(k) is not None]
            if len(sources) != 1:
                raise ValueError("Give exactly one of --rule, --rules-file, --deps or --from-matrix")
            source = sources[0]

            if source == "rules_file":
                spec = read_rules_file(self.env.resolve(input["rules_file"]))
                m, n = spec.rows, spec.cols
                mat = hybrid_matrix_from_rules(spec)
            elif source == "from_matrix":
                mat = parse_matrix(read_text(self.env.resolve(input["from_matrix"])))
                m = n = None
                if input.get("size"):
                    m, n = parse_size(input["size"])
                elif input.get("emit", "matrix") == "deps":
                    raise ValueError("--emit deps needs --size to number the cells")
            else:
                m, n = parse_size(input.get("size"))
                if source == "rule":
                    build = block_rule_matrix if input.get("block") else rule_matrix
                    mat = build(input["rule"], m, n)
                elif source == "deps":
                    dep = parse_dependency_map(read_text(self.env.resolve(input["deps"])), m, n)
                    mat = hybrid_matrix(dep, m, n)

            if input.get("emit", "matrix") == "deps":
                text = format_dependency_map(to_dependency_map(mat, m, n))
            else:
                text = format_matrix(mat)

            matrix_rank = rank(mat)
            data = {
                "rows": m,
                "cols": n,
                "side": mat.rows,
                "rank": matrix_rank,
                "invertible": mat.is_square() and matrix_rank == mat.rows,
            }
            data.update(emit_text(self.env, text, input.get("output")))
            return {
                "ok": True,
                "data": data,
                "error": None
            }
        except Exception as e:
            return failure(e)
