import json
from pathlib import Path
from typing import Any, Dict, Optional

CONFIG_DIR = ".lincell"
CONFIG_FILE = "config.json"


class Environment:
    def __init__(self, working_dir: Path, config: Dict[str, Any]):
        self.working_dir = working_dir
        self.config = config

    @classmethod
    def load(cls, working_dir: Path, config_path: Optional[Path] = None) -> "Environment":
        if config_path is not None:
            if not config_path.exists():
                raise FileNotFoundError(f"Config file not found: {config_path}")
        else:
            config_path = working_dir / CONFIG_DIR / CONFIG_FILE
            if not config_path.exists():
                return cls(working_dir, {})

        with open(config_path, 'r') as f:
            try:
                config = json.load(f)
            except json.JSONDecodeError as e:
                raise ValueError(f"Config file {config_path} is not valid JSON: {e}")
        if not isinstance(config, dict):
            raise ValueError(f"Config file {config_path} must hold a JSON object")
        return cls(working_dir, config)

    def get_config(self) -> Dict[str, Any]:
        return self.config

    def get_config_value(self, key: str, default: Any = None) -> Any:
        key_parts = key.split(".")
        current_dict = self.config
        for part in key_parts:
            if not isinstance(current_dict, dict) or part not in current_dict:
                return default
            current_dict = current_dict[part]
        return current_dict

    def resolve(self, path: str) -> Path:
        candidate = Path(path)
        if candidate.is_absolute():
            return candidate
        return self.working_dir / candidate
