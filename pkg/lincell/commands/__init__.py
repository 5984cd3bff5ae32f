from .matrix import MatrixCommand
from .render import RenderCommand
from .step import StepCommand
from .sweep import SweepCommand
from .transform import TransformCommand
from .verify import VerifyCommand

COMMANDS = (
    StepCommand,
    MatrixCommand,
    VerifyCommand,
    TransformCommand,
    SweepCommand,
    RenderCommand,
)

__all__ = [
    "COMMANDS",
    "MatrixCommand",
    "RenderCommand",
    "StepCommand",
    "SweepCommand",
    "TransformCommand",
    "VerifyCommand",
]
