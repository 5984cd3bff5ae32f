from typing import Any, Dict

from ..automaton import evolve
from ..command import Command, CommandArgument
from ..env import Environment
from ..formats import IMAGE_FORMATS, read_image
from ..grid import Grid
from ..rules import TRANSLATION_RULES
from ..transforms import (
    SHAPE_KINDS,
    RegionPartition,
    SeedShape,
    copies_fit,
    count_copies,
    replicate_prediction,
    seed,
    thicken,
    thin,
    translate,
    zoom_in,
    zoom_out,
)
from .common import emit_grid, failure, grid_summary, parse_size

OPERATIONS = ("translate", "replicate", "zoom-in", "zoom-out", "thicken", "thin", "seed")


class TransformCommand(Command):
    def __init__(self):
        super().__init__("transform")
        self.schema.register_argument(
            CommandArgument("operation", "Transform to run", True, str, choices=OPERATIONS, positional=True)
        )
        self.schema.register_argument(CommandArgument("input", "Input portable bitmap", False, str))
        self.schema.register_argument(
            CommandArgument("shape", "Generate the seed image instead of reading one", False, str,
                            choices=tuple(k for k in SHAPE_KINDS if k != "custom"))
        )
        self.schema.register_argument(CommandArgument("size", "Generated grid size as MxN", False, str, default="100x100"))
        self.schema.register_argument(CommandArgument("radius", "Circle radius", False, int, default=0))
        self.schema.register_argument(CommandArgument("side", "Square side", False, int, default=0))
        self.schema.register_argument(CommandArgument("height", "Rectangle height in rows", False, int, default=0))
        self.schema.register_argument(CommandArgument("width", "Rectangle width in columns", False, int, default=0))
        self.schema.register_argument(CommandArgument("length", "Plus bar length", False, int, default=0))
        self.schema.register_argument(CommandArgument("breadth", "Plus bar breadth", False, int, default=0))
        self.schema.register_argument(
            CommandArgument("direction", "Translation direction", False, str, choices=tuple(TRANSLATION_RULES))
        )
        self.schema.register_argument(CommandArgument("steps", "Repetitions", False, int, default=1))
        self.schema.register_argument(CommandArgument("rule", "Rule to replicate with", False, int))
        self.schema.register_argument(CommandArgument("k", "Replicate over 2^k steps", False, int, default=1))
        self.schema.register_argument(
            CommandArgument("axis", "Thicken/thin axis", False, str, default="horizontal",
                            choices=("horizontal", "vertical"))
        )
        self.schema.register_argument(CommandArgument("split_row", "First row of regions D", False, int))
        self.schema.register_argument(CommandArgument("split_col", "First column of region B", False, int))
        self.schema.register_argument(CommandArgument("output", "Output bitmap (stdout when omitted)", False, str))
        self.schema.register_argument(
            CommandArgument("format", "Output bitmap format", False, str, choices=IMAGE_FORMATS)
        )

    def initialize(self, env: Environment):
        super().initialize(env)

    def description(self) -> str:
        return """`transform` - Translate, replicate (2^k steps of a rule), zoom in/out, \
thicken or thin a bitmap, or just generate a seed shape (circle, square, plus, rectangle)."""

    def _source(self, input: Dict[str, Any]) -> Grid:
        if (input.get("input") is None) == (input.get("shape") is None):
            raise ValueError("Give exactly one of --input or --shape")
        if input.get("input") is not None:
            return read_image(self.env.resolve(input["input"]))
        m, n = parse_size(input.get("size") or "100x100")
        shape = SeedShape(
            kind=input["shape"],
            radius=input.get("radius") or 0,
            side=input.get("side") or 0,
            height=input.get("height") or 0,
            width=input.get("width") or 0,
            length=input.get("length") or 0,
            breadth=input.get("breadth") or 0,
        )
        return seed(shape, m, n)

    def _partition(self, input: Dict[str, Any]) -> RegionPartition:
        split_row = input.get("split_row")
        split_col = input.get("split_col")
        return RegionPartition(
            split_row if split_row is not None else self.config("transforms.split_row"),
            split_col if split_col is not None else self.config("transforms.split_col"),
        )

    def execute(self, input: Dict[str, Any]) -> Dict[str, Any]:
        try:
            operation = input["operation"]
            g = self._source(input)
            steps = input.get("steps", 1)
            if steps is None or steps < 0:
                raise ValueError(f"Step count must be non-negative, got {steps}")
            data: Dict[str, Any] = {"operation": operation}

            if operation == "seed":
                result = g
            elif operation == "translate":
                if input.get("direction") is None:
                    raise ValueError("translate needs --direction")
                result = translate(g, input["direction"], steps)
            elif operation == "replicate":
                rule, k = input.get("rule"), input.get("k", 1)
                if rule is None:
                    raise ValueError("replicate needs --rule")
                result = evolve(g, rule, 1 << k)
                prediction = replicate_prediction(g, rule, k)
                data.update({
                    "matches_prediction": result == prediction,
                    "copies_fit": copies_fit(g, rule, k),
                    "copies": count_copies(result),
                    "source_components": count_copies(g),
                })
            else:
                part = self._partition(input)
                if operation == "zoom-in":
                    result = zoom_in(g, part, steps)
                elif operation == "zoom-out":
                    result = zoom_out(g, part, steps)
                elif operation == "thicken":
                    result = thicken(g, input.get("axis", "horizontal"), part, steps)
                else:
                    result = thin(g, input.get("axis", "horizontal"), part, steps)

            data.update(grid_summary(result))
            data.update(emit_grid(self.env, result, input.get("output"), input.get("format")))
            return {
                "ok": True,
                "data": data,
                "error": None
            }
        except Exception as e:
            return failure(e)
