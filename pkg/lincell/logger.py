import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional


class Logger:
    def __init__(self, log_path: Optional[Path] = None, debug: bool = False):
        self.log_path = log_path
        self.debug = debug

        if self.log_path is not None:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.log_path, 'a') as f:
                f.write(f"=== lincell run ===\n")
                f.write(f"Started: {datetime.now().isoformat()}\n")
                f.write(f"{'=' * 80}\n\n")

    def log(self, message: str, level: str = "INFO"):
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        message = f"[{timestamp}] [{level}] {message}"
        if self.log_path is not None:
            with open(self.log_path, 'a') as f:
                f.write(f"{message}\n")
        if self.debug:
            print(message, file=sys.stderr)

    def log_command(self, name: str, arguments: Dict[str, Any]):
        self.log(f">>> Running command: {name}", "INFO")
        self.log(f"    Arguments: {json.dumps(arguments, indent=2, sort_keys=True, default=str)}", "DEBUG")

    def log_command_result(self, name: str, result: Any, elapsed: float, error: Optional[str] = None):
        if error:
            self.log(f"<<< Command {name} FAILED after {elapsed:.3f}s: {error}", "ERROR")
        else:
            self.log(f"<<< Command {name} completed in {elapsed:.3f}s", "INFO")
            if result:
                self.log(f"    Result: {json.dumps(result, indent=2, sort_keys=True, default=str)}", "DEBUG")

    def log_termination(self, reason: str):
        self.log("=" * 80, "INFO")
        self.log(f"SESSION FINISHED - {reason}", "INFO")
        self.log("=" * 80, "INFO")

    def log_error(self, error: str, exception: Optional[Exception] = None):
        self.log(f"ERROR: {error}", "ERROR")
        if exception:
            self.log(f"Exception: {str(exception)}", "ERROR")
