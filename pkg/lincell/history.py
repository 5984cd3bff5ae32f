from datetime import datetime
from typing import Any, Dict, Optional


class CommandRecord:
    def __init__(
        self,
        command_name: str,
        arguments: Dict[str, Any],
        result: Any,
        error: Optional[Any] = None,
        elapsed: float = 0.0,
    ):
        self.command_name = command_name
        self.arguments = arguments
        self.result = result
        self.error = error
        self.elapsed = elapsed
        self.timestamp = datetime.now()

    @property
    def ok(self) -> bool:
        return self.error is None

    def get_content(self) -> Dict[str, Any]:
        return {
            "command": self.command_name,
            "arguments": self.arguments,
            "result": self.result,
            "error": self.error,
        }

    def to_json(self) -> Dict[str, Any]:
        content = self.get_content()
        content["timestamp"] = self.timestamp.isoformat()
        content["elapsed"] = self.elapsed
        return content
