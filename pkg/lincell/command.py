from typing import Any, Dict, List, Optional, Sequence

from .env import Environment

CommandArgumentInput = Any


class CommandArgument:
    def __init__(
        self,
        name: str,
        description: str,
        required: bool,
        type: Any,
        default: Any = None,
        choices: Optional[Sequence[Any]] = None,
        positional: bool = False,
    ):
        self.name = name
        self.description = description
        self.required = required
        self.type = type
        self.default = default
        self.choices = choices
        self.positional = positional

    @property
    def is_flag(self) -> bool:
        return self.type is bool

    def validate(self, input: CommandArgumentInput) -> bool:
        if input is None:
            return not self.required
        if self.type is float and type(input) is int:
            return self.choices is None or input in self.choices
        if self.type is not None and type(input) != self.type:
            return False
        if self.choices is not None and input not in self.choices:
            return False
        return True


class CommandSchema:
    arguments: Dict[str, CommandArgument]

    def __init__(self):
        self.arguments = {}

    def register_argument(self, argument: CommandArgument):
        self.arguments[argument.name] = argument

    def validate(self, input: Dict[str, CommandArgumentInput]) -> bool:
        for name in input:
            if name not in self.arguments:
                raise ValueError(f"Unknown argument {name}")
        for argument in self.arguments.values():
            if input.get(argument.name) is None and argument.required:
                raise ValueError(f"Argument {argument.name} is required")
            if argument.name in input and not argument.validate(input[argument.name]):
                raise ValueError(f"Argument {argument.name} is invalid: {input[argument.name]!r}")
        return True

    def with_defaults(self, input: Dict[str, CommandArgumentInput]) -> Dict[str, CommandArgumentInput]:
        filled = {name: argument.default for name, argument in self.arguments.items()}
        filled.update({k: v for k, v in input.items() if v is not None})
        return filled


class Command:
    def __init__(self, name: str):
        self.name = name
        self.schema = CommandSchema()
        self.env = None

    def initialize(self, env: Environment):
        self.env = env

    def description(self) -> str:
        raise NotImplementedError("Subclasses must implement this method")

    def execute(self, input: Dict[str, CommandArgumentInput]) -> Dict[str, Any]:
        raise NotImplementedError("Subclasses must implement this method")

    def config(self, key: str, default: Any = None) -> Any:
        if self.env is None:
            return default
        return self.env.get_config_value(key, default)


class CommandRegistry:
    commands: Dict[str, Command]

    def __init__(self):
        self.commands = {}

    def register_command(self, command: Command):
        self.commands[command.name] = command

    def get_command(self, name: str) -> Command:
        if name not in self.commands:
            raise KeyError(f"Unknown command: {name}")
        return self.commands[name]

    def list_commands(self) -> List[Command]:
        return list([command for command in self.commands.values()])
