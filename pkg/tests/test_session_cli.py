"""
Tests for configuration, logging, the command registry, sessions and the command line.
Each test works in its own temporary workspace.
"""

import contextlib
import io
import json
import shutil
import tempfile
import unittest
from pathlib import Path
from typing import Any, Dict, List, Optional

from lincell import __version__
from lincell.cli import build_parser, main
from lincell.command import CommandArgument, CommandRegistry, CommandSchema
from lincell.commands import COMMANDS, StepCommand
from lincell.env import Environment
from lincell.formats import read_image, write_image
from lincell.grid import Grid
from lincell.logger import Logger
from lincell.session import Session

SAMPLE_INPUT = [[0, 0, 1, 0], [1, 1, 1, 0], [1, 0, 1, 1]]
RULE_170_OUTPUT = [[1, 0, 1, 1], [0, 0, 1, 0], [1, 1, 0, 1]]


class TestWorkspaceRunner(unittest.TestCase):
    """
    Base test case that provides a temporary workspace with an optional
    .lincell/config.json.
    """

    def setUp(self):
        """Set up test environment before each test."""
        self.temp_dir = Path(tempfile.mkdtemp(prefix="test_lincell_"))

    def tearDown(self):
        """Clean up test environment after each test."""
        if self.temp_dir and self.temp_dir.exists():
            try:
                shutil.rmtree(self.temp_dir)
            except Exception as e:
                print(f"Warning: Failed to remove temp directory: {e}")

    def write_config(self, config: Dict[str, Any]) -> Path:
        """Write config.json into the workspace and return its path."""
        config_dir = self.temp_dir / ".lincell"
        config_dir.mkdir(parents=True, exist_ok=True)
        config_path = config_dir / "config.json"
        with open(config_path, 'w') as f:
            json.dump(config, f, indent=4)
        return config_path

    def write_grid(self, name: str, rows: List[List[int]], fmt: str = "P1") -> Path:
        path = self.temp_dir / name
        write_image(Grid.from_rows(rows), path, fmt)
        return path

    def run_cli(self, argv: List[str]):
        """Run the command line in the workspace; returns (status, stdout, stderr)."""
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            status = main(["-w", str(self.temp_dir)] + argv)
        return status, out.getvalue(), err.getvalue()

    def new_session(self, config: Optional[Dict[str, Any]] = None) -> Session:
        if config is not None:
            self.write_config(config)
        session = Session(self.temp_dir)
        session.initialize()
        return session


class TestEnvironment(TestWorkspaceRunner):
    """Tests for configuration loading."""

    def test_missing_default_config_is_empty(self):
        """Test that a workspace without config gets an empty config."""
        env = Environment.load(self.temp_dir)
        self.assertEqual(env.get_config(), {})
        self.assertEqual(env.get_config_value("sweep.mode", "guarded"), "guarded")

    def test_dotted_keys(self):
        """Test nested lookups with defaults."""
        self.write_config({"sweep": {"mode": "xor"}, "progress": True})
        env = Environment.load(self.temp_dir)
        self.assertEqual(env.get_config_value("sweep.mode"), "xor")
        self.assertIsNone(env.get_config_value("sweep.literal_pairing"))
        self.assertEqual(env.get_config_value("progress.deep", 3), 3)
        self.assertEqual(env.resolve("a.pbm"), self.temp_dir / "a.pbm")

    def test_bad_config(self):
        """Test that an explicit missing file and malformed JSON are errors."""
        with self.assertRaises(FileNotFoundError):
            Environment.load(self.temp_dir, self.temp_dir / "nope.json")
        config_dir = self.temp_dir / ".lincell"
        config_dir.mkdir()
        (config_dir / "config.json").write_text("{not json")
        with self.assertRaises(ValueError):
            Environment.load(self.temp_dir)


class TestLoggerAndRegistry(TestWorkspaceRunner):
    """Tests for the logger and the command schema."""

    def test_logger_writes_lines(self):
        """Test that log lines carry a level and land in the file."""
        log_path = self.temp_dir / "logs" / "run.log"
        logger = Logger(log_path)
        logger.log_command("step", {"rule": 170})
        logger.log_command_result("step", {"rows": 3}, 0.01)
        logger.log_error("boom")
        content = log_path.read_text()
        self.assertIn("[INFO] >>> Running command: step", content)
        self.assertIn("[ERROR] ERROR: boom", content)

    def test_schema_validation(self):
        """Test unknown, missing, mistyped and out-of-choice arguments."""
        schema = CommandSchema()
        schema.register_argument(CommandArgument("input", "Input", True, str))
        schema.register_argument(CommandArgument("mode", "Mode", False, str, choices=("xor", "guarded")))
        self.assertTrue(schema.validate({"input": "a.pbm"}))
        for bad in ({}, {"input": 3}, {"input": "a", "mode": "fast"}, {"input": "a", "extra": 1}):
            with self.assertRaises(ValueError):
                schema.validate(bad)
        self.assertEqual(schema.with_defaults({"input": "a"}), {"input": "a", "mode": None})

    def test_registry(self):
        """Test registering and looking up commands."""
        registry = CommandRegistry()
        registry.register_command(StepCommand())
        self.assertEqual(registry.get_command("step").name, "step")
        with self.assertRaises(KeyError):
            registry.get_command("paint")
        self.assertEqual(len(registry.list_commands()), 1)
        self.assertEqual(
            sorted(c().name for c in COMMANDS), ["matrix", "render", "step", "sweep", "transform", "verify"]
        )


class TestSession(TestWorkspaceRunner):
    """Tests for running commands through a session."""

    def test_allowed_commands(self):
        """Test that the registry honours allowed_commands."""
        session = self.new_session({"allowed_commands": ["step", "render"]})
        names = sorted(c.name for c in session.command_registry.list_commands())
        self.assertEqual(names, ["render", "step"])
        result = session.run("verify", {})
        self.assertFalse(result["ok"])
        self.assertIn("verify", result["error"])

    def test_step_records_history(self):
        """Test that a step run writes the output and is kept in history."""
        self.write_grid("in.pbm", SAMPLE_INPUT)
        session = self.new_session({"log": {"path": "run.log"}})
        result = session.run("step", {"input": "in.pbm", "rule": 170, "output": "out.pbm"})
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual(read_image(self.temp_dir / "out.pbm").to_rows(), RULE_170_OUTPUT)
        self.assertEqual(len(session.history), 1)
        self.assertTrue(session.history[0].ok)
        self.assertEqual(session.history[0].to_json()["command"], "step")
        self.assertIn("Command step completed", (self.temp_dir / "run.log").read_text())

    def test_step_errors(self):
        """Test that missing inputs and conflicting rules fail without raising."""
        self.write_grid("in.pbm", SAMPLE_INPUT)
        session = self.new_session()
        missing = session.run("step", {"input": "missing.pbm", "rule": 1})
        self.assertFalse(missing["ok"])
        both = session.run("step", {"input": "in.pbm", "rule": 1, "rules_file": "r.txt"})
        self.assertFalse(both["ok"])
        unknown = session.run("step", {"input": "in.pbm", "rule": 1, "colour": "red"})
        self.assertFalse(unknown["ok"])
        self.assertFalse(session.history[-1].ok)

    def test_hybrid_rules_file(self):
        """Test stepping with a rules file assigning rules 2, 3 and 4 by row."""
        self.write_grid("in.pbm", SAMPLE_INPUT)
        (self.temp_dir / "rules.txt").write_text("2 2 2 2\n3 3 3 3\n4 4 4 4\n")
        session = self.new_session()
        result = session.run("step", {"input": "in.pbm", "rules_file": "rules.txt", "output": "out.pbm"})
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual(
            read_image(self.temp_dir / "out.pbm").to_rows(), [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]
        )

    def test_matrix_command(self):
        """Test matrix output, block construction and conversion to dependencies."""
        session = self.new_session()
        result = session.run("matrix", {"rule": 8, "size": "2x2", "output": "m8.txt"})
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual((self.temp_dir / "m8.txt").read_text(), "4 4\n0010\n0001\n0000\n0000\n")
        block = session.run("matrix", {"rule": 8, "size": "2x2", "block": True})
        self.assertEqual(block["data"]["stdout"], "4 4\n0010\n0001\n0000\n0000\n")
        deps = session.run("matrix", {"from_matrix": "m8.txt", "size": "2x2", "emit": "deps"})
        self.assertEqual(deps["data"]["stdout"], "3\n4\n\n\n")
        self.assertFalse(deps["data"]["invertible"])

    def test_matrix_from_file_without_size(self):
        """Test that --from-matrix echoes a matrix without --size and needs it only for deps."""
        session = self.new_session()
        (self.temp_dir / "m8.txt").write_text("4 4\n0010\n0001\n0000\n0000\n")
        result = session.run("matrix", {"from_matrix": "m8.txt"})
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual(result["data"]["stdout"], "4 4\n0010\n0001\n0000\n0000\n")
        self.assertEqual(result["data"]["side"], 4)
        self.assertIsNone(result["data"]["rows"])
        deps = session.run("matrix", {"from_matrix": "m8.txt", "emit": "deps"})
        self.assertFalse(deps["ok"])
        self.assertIn("--size", deps["error"])

    def test_verify_subset(self):
        """Test a report over chosen rules and a state-graph check."""
        session = self.new_session({"verify": {"sizes": "2..3"}})
        result = session.run("verify", {"rules": "0,3,34", "graph_size": "2x2", "output": "report.txt"})
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual(result["data"]["always_invertible"], [3])
        self.assertEqual(result["data"]["graph_mismatches"], [])
        report = (self.temp_dir / "report.txt").read_text()
        self.assertIn("# state graphs on 2x2", report)

    def test_verify_small_sizes_flag_extra_rules(self):
        """Test that a complete run over 2..3 fails because rules outside the half-plane set pass there."""
        session = self.new_session()
        result = session.run("verify", {"sizes": "2..3", "output": "small.txt"})
        self.assertFalse(result["ok"])
        self.assertIn("half-plane", result["error"])
        self.assertIn("# invertible at these sizes only: ", (self.temp_dir / "small.txt").read_text())

    def test_transform_replicate(self):
        """Test replication of a generated square with copy counting."""
        session = self.new_session()
        result = session.run("transform", {
            "operation": "replicate", "shape": "square", "size": "64x64", "side": 5,
            "rule": 7, "k": 3, "output": "copies.pbm",
        })
        self.assertTrue(result["ok"], result["error"])
        self.assertTrue(result["data"]["matches_prediction"])
        self.assertEqual(result["data"]["copies"], 3)
        self.assertEqual(read_image(self.temp_dir / "copies.pbm").count(), 75)

    def test_transform_procedures(self):
        """Test thickening through the command with a configured split."""
        session = self.new_session({"transforms": {"split_col": 50}})
        result = session.run("transform", {
            "operation": "thicken", "shape": "rectangle", "size": "100x100",
            "height": 50, "width": 70, "output": "thick.pbm",
        })
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual(result["data"]["bounding_box"], (25, 14, 74, 85))
        bad = session.run("transform", {"operation": "translate", "shape": "square", "side": 4})
        self.assertFalse(bad["ok"])

    def test_sweep_command(self):
        """Test a sweep with frames and a metrics table."""
        session = self.new_session({"random": {"seed": 5}})
        result = session.run("sweep", {
            "size": "30x30", "count": 20, "dest": "15,15", "iters": 4,
            "frames": "frames", "metrics": "metrics.csv", "output": "final.pbm",
        })
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual(result["data"]["frames"], 5)
        self.assertEqual(result["data"]["populations"], [20] * 5)
        self.assertTrue((self.temp_dir / "frames" / "frame_0004.pbm").exists())
        self.assertEqual(len((self.temp_dir / "metrics.csv").read_text().splitlines()), 6)

    def test_render_command(self):
        """Test the ASCII preview with configured characters."""
        self.write_grid("in.pbm", SAMPLE_INPUT, "P4")
        session = self.new_session({"render": {"on": "X", "off": " "}})
        result = session.run("render", {"input": "in.pbm"})
        self.assertTrue(result["ok"], result["error"])
        self.assertEqual(result["data"]["stdout"], "  X \nXXX \nX XX\n")


class TestCommandLine(TestWorkspaceRunner):
    """Tests for the lincell entry point."""

    def test_step_rule_170(self):
        """Test that step --rule 170 writes the expected file."""
        self.write_grid("in.pbm", SAMPLE_INPUT)
        status, out, err = self.run_cli(["step", "--input", "in.pbm", "--rule", "170", "--output", "out.pbm"])
        self.assertEqual(status, 0, err)
        self.assertEqual(read_image(self.temp_dir / "out.pbm").to_rows(), RULE_170_OUTPUT)
        self.assertEqual(json.loads(out)["population"], 7)

    def test_identity_steps(self):
        """Test that seven steps of rule 1 give the input back."""
        self.write_grid("in.pbm", SAMPLE_INPUT)
        status, _, err = self.run_cli(
            ["step", "--input", "in.pbm", "--rule", "1", "--steps", "7", "--output", "same.pbm"]
        )
        self.assertEqual(status, 0, err)
        self.assertEqual(read_image(self.temp_dir / "same.pbm").to_rows(), SAMPLE_INPUT)

    def test_verify_full_range(self):
        """Test that verify --sizes 2..6 exits 0 with the 31 listed rules inside the 65 half-plane rules."""
        status, _, err = self.run_cli(["verify", "--sizes", "2..6", "--output", "report.txt"])
        self.assertEqual(status, 0, err)
        report = (self.temp_dir / "report.txt").read_text()
        self.assertIn("# always invertible (65): ", report)
        self.assertIn("# contains the 31 listed rules: yes", report)
        self.assertIn("# beyond the listed rules (34): ", report)
        self.assertIn("# equals the half-plane rules (unit triangular, determinant 1 at every size): yes", report)

    def test_failure_diagnostic(self):
        """Test that a failing command exits 1 with a one-line message."""
        status, _, err = self.run_cli(["step", "--input", "missing.pbm", "--rule", "1"])
        self.assertEqual(status, 1)
        self.assertTrue(err.startswith("lincell: error: "))
        self.assertEqual(len(err.strip().splitlines()), 1)

    def test_bad_config_file(self):
        """Test that a missing --config file is reported."""
        status, _, err = self.run_cli(["--config", str(self.temp_dir / "none.json"), "render", "x.pbm"])
        self.assertEqual(status, 1)
        self.assertIn("Config file not found", err)

    def test_usage_errors(self):
        """Test unknown flags, out-of-choice values and --version on subcommands."""
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["step", "--input", "a.pbm", "--colour", "red"])
            self.assertEqual(ctx.exception.code, 2)
            with self.assertRaises(SystemExit) as ctx:
                main(["sweep", "--dest", "1,1", "--mode", "fast"])
            self.assertEqual(ctx.exception.code, 2)
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            with self.assertRaises(SystemExit) as ctx:
                main(["matrix", "--version"])
        self.assertEqual(ctx.exception.code, 0)
        self.assertIn(__version__, out.getvalue())

    def test_parser_flags(self):
        """Test that schema names become dashed flags."""
        args = build_parser().parse_args(["sweep", "--dest", "3,4", "--no-freeze-border", "--literal"])
        self.assertTrue(args.no_freeze_border)
        self.assertTrue(args.literal)
        self.assertEqual(args.dest, "3,4")
        args = build_parser().parse_args(["transform", "zoom-in", "--shape", "square", "--side", "10"])
        self.assertEqual(args.operation, "zoom-in")
        self.assertEqual(args.side, 10)


if __name__ == "__main__":
    unittest.main()
