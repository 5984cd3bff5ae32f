from typing import Any, Dict

from ..command import Command, CommandArgument
from ..env import Environment
from ..formats import read_image, render_ascii
from .common import emit_text, failure


class RenderCommand(Command):
    def __init__(self):
        super().__init__("render")
        self.schema.register_argument(CommandArgument("input", "Input portable bitmap", True, str, positional=True))
        self.schema.register_argument(CommandArgument("max_width", "Widest preview in characters", False, int))
        self.schema.register_argument(CommandArgument("on", "Character for a one", False, str))
        self.schema.register_argument(CommandArgument("off", "Character for a zero", False, str))
        self.schema.register_argument(CommandArgument("output", "Text file (stdout when omitted)", False, str))

    def initialize(self, env: Environment):
        super().initialize(env)

    def description(self) -> str:
        return "`render` - Print an ASCII preview of a bitmap."

    def execute(self, input: Dict[str, Any]) -> Dict[str, Any]:
        try:
            g = read_image(self.env.resolve(input["input"]))
            text = render_ascii(
                g,
                max_width=input.get("max_width") or self.config("render.max_width"),
                on=input.get("on") or self.config("render.on", "#"),
                off=input.get("off") or self.config("render.off", "."),
            )
            data = {"rows": g.rows, "cols": g.cols}
            data.update(emit_text(self.env, text, input.get("output")))
            return {
                "ok": True,
                "data": data,
                "error": None
            }
        except Exception as e:
            return failure(e)
