from typing import Any, Dict, List

from ..command import Command, CommandArgument
from ..env import Environment
from ..gf2 import is_invertible
from ..matrices import rule_matrix
from ..reversibility import order_of, reversibility_report, sizes_between, state_graph
from .common import emit_text, failure, parse_rule_list, parse_size, parse_sizes

DEFAULT_SIZES = "2..6"


class VerifyCommand(Command):
    def __init__(self):
        super().__init__("verify")
        self.schema.register_argument(
            CommandArgument("sizes", "Grid sizes to test: A..B, or A..BxC..D for rows x columns", False, str)
        )
        self.schema.register_argument(
            CommandArgument("rules", "Comma separated rules to report (all 512 when omitted)", False, str)
        )
        self.schema.register_argument(
            CommandArgument("graph_size", "Also check state graphs on an MxN grid (at most 16 cells)", False, str)
        )
        self.schema.register_argument(CommandArgument("output", "Report file (stdout when omitted)", False, str))
        self.schema.register_argument(CommandArgument("progress", "Show progress bars", False, bool, default=False))

    def initialize(self, env: Environment):
        super().initialize(env)

    def description(self) -> str:
        return """`verify` - Rank every rule matrix over a range of grid sizes, list the rules \
invertible at every size, confirm they include the 31 listed reversible rules and compare \
them with the rules whose neighbours lie in one open half-plane. With --graph-size, \
also confirm on that grid that invertible rules have permutation state graphs and that \
their matrix order equals the lcm of the cycle lengths."""

    def execute(self, input: Dict[str, Any]) -> Dict[str, Any]:
        try:
            rows, cols = parse_sizes(input.get("sizes") or self.config("verify.sizes", DEFAULT_SIZES))
            sizes = sizes_between(rows, cols)
            rules = parse_rule_list(input["rules"]) if input.get("rules") else None
            progress = bool(input.get("progress") or self.config("progress", False))

            report = reversibility_report(sizes, rules, progress=progress)
            text = report.render()
            complete = rules is None

            graph_size = input.get("graph_size") or self.config("verify.graph_size")
            graph_mismatches: List[int] = []
            if graph_size:
                m, n = parse_size(graph_size)
                lines, graph_mismatches = self._graph_section(sorted(report.records), m, n)
                text += "\n" + "\n".join(lines) + "\n"

            data = {
                "sizes": [f"{m}x{n}" for m, n in sizes],
                "always_invertible": sorted(report.always_invertible()),
                "contains_listed": report.contains_reference(),
                "extra_rules": report.extra_rules(),
                "matches_half_plane": report.matches_unipotent() if complete else None,
                "graph_mismatches": graph_mismatches,
            }
            data.update(emit_text(self.env, text, input.get("output")))

            error = None
            failed = sorted(report.predicted() - report.always_invertible())
            if not report.contains_reference():
                error = f"Listed reversible rules are singular: {report.missing_reference()}"
            elif failed:
                error = f"Half-plane rules are singular: {failed}"
            elif complete and not report.matches_unipotent():
                error = "Always-invertible set differs from the half-plane rules"
            elif graph_mismatches:
                error = f"State graph disagrees with the rule matrix for rules {graph_mismatches}"
            return {
                "ok": error is None,
                "data": data,
                "error": error
            }
        except Exception as e:
            return failure(e)

    def _graph_section(self, rules: List[int], m: int, n: int):
        lines = [f"# state graphs on {m}x{n}", "rule\tinvertible\tpermutation\tcycles\ttransients\tperiod\torder"]
        mismatches = []
        for rule in rules:
            graph = state_graph(rule, m, n)
            invertible = is_invertible(rule_matrix(rule, m, n))
            order = order_of(rule, m, n) if invertible else None
            period = graph.period() if graph.is_permutation() else None
            if invertible != graph.is_permutation() or order != period:
                mismatches.append(rule)
            lines.append(
                f"{rule}\t{'yes' if invertible else 'no'}\t{'yes' if graph.is_permutation() else 'no'}\t"
                f"{graph.attractors}\t{graph.transient_count()}\t{period or '-'}\t{order or '-'}"
            )
        return lines, mismatches
