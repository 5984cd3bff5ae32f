from typing import Any, Dict, List

from ..command import Command, CommandArgument
from ..env import Environment
from ..formats import IMAGE_FORMATS, dump_frames, read_image, write_metrics_table
from ..grid import Grid
from ..sweepers import MODES, SUPPORTED_ANGLE, SweepConfig, scatter, sweep
from .common import emit_grid, failure, grid_summary, parse_point, parse_size


class SweepCommand(Command):
    def __init__(self):
        super().__init__("sweep")
        self.schema.register_argument(CommandArgument("input", "Input portable bitmap", False, str))
        self.schema.register_argument(
            CommandArgument("size", "Scatter ones on a fresh MxN grid instead of reading one", False, str)
        )
        self.schema.register_argument(CommandArgument("count", "Number of scattered ones", False, int, default=20))
        self.schema.register_argument(CommandArgument("seed", "Scatter seed", False, int))
        self.schema.register_argument(CommandArgument("dest", "Destination as ROW,COL", True, str))
        self.schema.register_argument(CommandArgument("iters", "Sweep iterations", False, int, default=1))
        self.schema.register_argument(CommandArgument("angle", "Rotation angle in degrees", False, int,
                                                      default=SUPPORTED_ANGLE))
        self.schema.register_argument(CommandArgument("mode", "Update variant", False, str, choices=MODES))
        self.schema.register_argument(
            CommandArgument("literal", "Use the literal rule pairing for the diagonal phase", False, bool, default=False)
        )
        self.schema.register_argument(
            CommandArgument("no_freeze_border", "Let border ones move", False, bool, default=False)
        )
        self.schema.register_argument(CommandArgument("frames", "Directory for one bitmap per iteration", False, str))
        self.schema.register_argument(CommandArgument("metrics", "CSV file for per-iteration metrics", False, str))
        self.schema.register_argument(CommandArgument("output", "Final bitmap (stdout when omitted)", False, str))
        self.schema.register_argument(
            CommandArgument("format", "Output bitmap format", False, str, choices=IMAGE_FORMATS)
        )
        self.schema.register_argument(CommandArgument("progress", "Show a progress bar", False, bool, default=False))

    def initialize(self, env: Environment):
        super().initialize(env)

    def description(self) -> str:
        return """`sweep` - Gather the ones of a bitmap toward --dest with the four-phase \
sweeper (--mode guarded|xor) for --iters iterations, optionally dumping frames and a \
population/distance/radius table."""

    def _source(self, input: Dict[str, Any]) -> Grid:
        if (input.get("input") is None) == (input.get("size") is None):
            raise ValueError("Give exactly one of --input or --size")
        if input.get("input") is not None:
            return read_image(self.env.resolve(input["input"]))
        m, n = parse_size(input["size"])
        seed = input.get("seed")
        if seed is None:
            seed = self.config("random.seed", 0)
        return scatter(m, n, input.get("count", 20), seed)

    def execute(self, input: Dict[str, Any]) -> Dict[str, Any]:
        try:
            g = self._source(input)
            freeze_border = not input.get("no_freeze_border") and bool(self.config("sweep.freeze_border", True))
            cfg = SweepConfig(
                destination=parse_point(input["dest"]),
                angle=input.get("angle", SUPPORTED_ANGLE),
                iterations=input.get("iters", 1),
                mode=input.get("mode") or self.config("sweep.mode", "guarded"),
                literal_pairing=bool(input.get("literal") or self.config("sweep.literal_pairing", False)),
                freeze_border=freeze_border,
            )
            frames: List[Grid] = []
            callback = (lambda it, grid, sample: frames.append(grid)) if input.get("frames") else None
            progress = bool(input.get("progress") or self.config("progress", False))
            result, record = sweep(g, cfg, callback=callback, progress=progress)

            data = grid_summary(result)
            data.update({
                "mode": cfg.mode,
                "iterations": cfg.iterations,
                "populations": record.populations,
                "distances": record.distances,
                "radii": record.radii,
            })
            if input.get("frames"):
                paths = dump_frames(frames, self.env.resolve(input["frames"]))
                data["frames"] = len(paths)
            if input.get("metrics"):
                path = self.env.resolve(input["metrics"])
                write_metrics_table(record.samples, path)
                data["metrics"] = str(path)
            data.update(emit_grid(self.env, result, input.get("output"), input.get("format")))
            return {
                "ok": True,
                "data": data,
                "error": None
            }
        except Exception as e:
            return failure(e)
