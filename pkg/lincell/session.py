import time
from pathlib import Path
from typing import Any, Dict, List, Optional

from .command import CommandRegistry
from .commands import COMMANDS
from .env import Environment
from .history import CommandRecord
from .logger import Logger


class Session:
    working_dir: Path
    config_path: Optional[Path]
    command_registry: CommandRegistry
    history: List[CommandRecord]
    logger: Logger
    env: Environment
    debug: bool

    def __init__(self, working_dir: Path, debug: bool = False, config_path: Optional[Path] = None,
                 log_path: Optional[Path] = None):
        self.working_dir = working_dir
        self.config_path = config_path
        self.log_path = log_path
        self.debug = debug
        self.command_registry = None
        self.history = []
        self.logger = None
        self.env = None

    def initialize_environment(self):
        self.env = Environment.load(self.working_dir, self.config_path)

    def initialize_logger(self):
        log_path = self.log_path
        if log_path is None:
            configured = self.env.get_config_value("log.path", None)
            log_path = self.env.resolve(configured) if configured else None

        self.logger = Logger(log_path, self.debug)
        self.logger.log("Session initialization started")
        self.logger.log(f"Working directory: {self.working_dir}")
        self.logger.log(f"Debug mode: {self.debug}")

    def initialize_command_registry(self):
        self.command_registry = CommandRegistry()
        allowed_commands = self.env.get_config_value("allowed_commands", None)
        for command_class in COMMANDS:
            command = command_class()
            if allowed_commands is not None and command.name not in allowed_commands:
                continue
            command.initialize(self.env)
            self.command_registry.register_command(command)
        self.logger.log(
            f"Registered commands: {', '.join(c.name for c in self.command_registry.list_commands())}"
        )

    def initialize(self):
        self.initialize_environment()
        self.initialize_logger()
        self.initialize_command_registry()

    def run(self, name: str, input: Dict[str, Any]) -> Dict[str, Any]:
        if self.command_registry is None:
            self.initialize()

        self.logger.log_command(name, input)
        start = time.perf_counter()
        try:
            command = self.command_registry.get_command(name)
            command.schema.validate(input)
            result = command.execute(command.schema.with_defaults(input))
        except (KeyError, ValueError) as e:
            message = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
            self.logger.log_error(f"Command {name} rejected", e)
            result = {"ok": False, "data": None, "error": message}
        elapsed = time.perf_counter() - start

        self.logger.log_command_result(name, _loggable(result.get("data")), elapsed, result.get("error"))
        self.history.append(CommandRecord(name, input, result.get("data"), result.get("error"), elapsed))
        return result

    def finish(self, reason: str = "done"):
        if self.logger is not None:
            self.logger.log_termination(reason)


def _loggable(data: Any) -> Any:
    if isinstance(data, dict) and "stdout" in data:
        data = dict(data)
        data["stdout"] = f"<{len(data['stdout'])} chars>"
    return data
