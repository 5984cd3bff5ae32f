from typing import Any, Dict

from ..automaton import evolve, evolve_hybrid
from ..command import Command, CommandArgument
from ..env import Environment
from ..formats import IMAGE_FORMATS, read_image, read_rules_file
from .common import emit_grid, failure, grid_summary


class StepCommand(Command):
    def __init__(self):
        super().__init__("step")
        self.schema.register_argument(CommandArgument("input", "Input portable bitmap", True, str))
        self.schema.register_argument(CommandArgument("output", "Output portable bitmap (stdout when omitted)", False, str))
        self.schema.register_argument(CommandArgument("rule", "Uniform rule number 0..511", False, int))
        self.schema.register_argument(
            CommandArgument("rules_file", "Hybrid rules: one line of decimal rules per grid row", False, str)
        )
        self.schema.register_argument(CommandArgument("steps", "Number of synchronous steps", False, int, default=1))
        self.schema.register_argument(
            CommandArgument("format", "Output bitmap format", False, str, choices=IMAGE_FORMATS)
        )

    def initialize(self, env: Environment):
        super().initialize(env)

    def description(self) -> str:
        return """`step` - Apply a uniform rule (--rule) or a per-cell hybrid assignment \
(--rules-file) to a bitmap for --steps synchronous null-boundary steps."""

    def execute(self, input: Dict[str, Any]) -> Dict[str, Any]:
        try:
            rule = input.get("rule")
            rules_file = input.get("rules_file")
            steps = input.get("steps", 1)
            if (rule is None) == (rules_file is None):
                raise ValueError("Give exactly one of --rule or --rules-file")
            if steps is None or steps < 0:
                raise ValueError(f"Step count must be non-negative, got {steps}")

            g = read_image(self.env.resolve(input["input"]))
            if rule is not None:
                result = evolve(g, rule, steps)
            else:
                spec = read_rules_file(self.env.resolve(rules_file))
                if (spec.rows, spec.cols) != g.shape:
                    raise ValueError(
                        f"Rules file is {spec.rows}x{spec.cols} but the image is {g.rows}x{g.cols}"
                    )
                result = evolve_hybrid(g, spec, steps)

            data = grid_summary(result)
            data.update({"steps": steps, "rule": rule if rule is not None else "hybrid"})
            data.update(emit_grid(self.env, result, input.get("output"), input.get("format")))
            return {
                "ok": True,
                "data": data,
                "error": None
            }
        except Exception as e:
            return failure(e)
