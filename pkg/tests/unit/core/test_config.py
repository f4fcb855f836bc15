"""Unit tests for the Volergo Core package configuration layer."""

import importlib.util
import json
import os
import warnings

from pyfakefs.fake_filesystem_unittest import TestCase
from volergo.core import (
    ConfigFileNotFound,
    ConfigFileUnreadable,
    ConfigOverrideWarning,
    ConfigValidationFailed,
    Log,
    RunConfig,
    UnknownOverride,
    config_reference,
    load_schema,
    parse_overrides,
    schema_defaults,
)
from volergo.core.validators import SCHEMA_PATH

FIXTURES_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


class TestParseOverrides(TestCase):
    def test_values_are_typed(self):
        """Test override values arrive as YAML scalars and lists"""
        overrides = parse_overrides(
            [
                "--controller.horizon_steps=8",
                "--controller.armijo=0.5",
                "--output.footprints=true",
                "--space.lengths=[2, 1]",
            ]
        )
        self.assertEqual(overrides["controller"], {"horizon_steps": 8, "armijo": 0.5})
        self.assertIs(overrides["output"]["footprints"], True)
        self.assertEqual(overrides["space"]["lengths"], [2, 1])

    def test_later_tokens_win(self):
        """Test repeated keys keep the last value"""
        overrides = parse_overrides(["--jobs=2", "--jobs=3"])
        self.assertEqual(overrides, {"jobs": 3})

    def test_malformed_tokens(self):
        """Test tokens without a dotted --key=value form are rejected"""
        for token in ("controller.horizon_steps=3", "--controller.horizon_steps", "--=3", "--a..b=1"):
            with self.assertRaises(UnknownOverride):
                parse_overrides([token])


class TestRunConfig(TestCase):
    def setUp(self):
        self.setUpPyfakefs()
        for package in ("jsonschema", "commentjson", "lark"):
            spec = importlib.util.find_spec(package)
            if spec is not None and spec.origin:
                self.fs.add_real_directory(os.path.dirname(spec.origin))
        self.fs.add_real_file(SCHEMA_PATH)
        self.fs.add_real_directory(FIXTURES_PATH)
        self.fs.create_dir(Log.dirname)

    def test_defaults_only(self):
        """Test a run without a file resolves to the schema defaults"""
        config = RunConfig.load(environ={})
        self.assertEqual(config.data, schema_defaults(load_schema()))
        self.assertEqual(config.get("controller.horizon_steps"), 20)
        self.assertEqual(config.get("basis.modes_per_dim"), 10)
        self.assertEqual(config.jobs, 1)
        self.assertIsNone(config.get("no.such.key"))

    def test_yaml_and_jsonc_files_agree(self):
        """Test the YAML and commented JSON fixtures resolve to the same document"""
        from_yaml = RunConfig.load(os.path.join(FIXTURES_PATH, "small.config.yaml"), environ={})
        from_json = RunConfig.load(os.path.join(FIXTURES_PATH, "small.config.json"), environ={})
        self.assertEqual(from_yaml.data, from_json.data)
        self.assertEqual(from_yaml.get("basis.modes_per_dim"), 4)
        # untouched keys keep their defaults
        self.assertEqual(from_yaml.get("controller.backtracking"), 0.5)

    def test_layer_priority(self):
        """Test overrides beat flags, flags beat the environment, the environment beats the file"""
        path = "/work/run.yaml"
        self.fs.create_file(path, contents="task:\n  seed: 1\n  suite: ground\njobs: 2\n")
        config = RunConfig.load(
            path,
            overrides=["--task.method=baseline"],
            flags={"task.seed": 5, "task.suite": None, "task.method": "vec"},
            environ={"VOLERGO_JOBS": "4", "VOLERGO_OUTPUT_ROOT": "/results"},
        )
        self.assertEqual(config.get("task.seed"), 5)
        self.assertEqual(config.get("task.suite"), "ground")
        self.assertEqual(config.get("task.method"), "baseline")
        self.assertEqual(config.jobs, 4)
        self.assertEqual(config.output_root, "/results")

    def test_override_of_file_value_warns(self):
        """Test overriding a value the file set explicitly issues a warning"""
        path = "/work/run.yaml"
        self.fs.create_file(path, contents="controller:\n  horizon_steps: 12\n")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            config = RunConfig.load(path, overrides=["--controller.horizon_steps=6"], environ={})
        self.assertEqual(config.get("controller.horizon_steps"), 6)
        self.assertTrue(any(issubclass(item.category, ConfigOverrideWarning) for item in caught))

    def test_invalid_horizon_names_field(self):
        """Test an invalid horizon is reported with its dotted path"""
        with self.assertRaises(ConfigValidationFailed) as context:
            RunConfig.load(overrides=["--controller.horizon_steps=0"], environ={})
        self.assertEqual(context.exception.field, "controller.horizon_steps")
        self.assertIn("controller.horizon_steps", str(context.exception))

    def test_unknown_key_is_rejected(self):
        """Test keys outside the schema are rejected and named"""
        with self.assertRaises(ConfigValidationFailed) as context:
            RunConfig.load(overrides=["--controller.bogus=1"], environ={})
        self.assertEqual(context.exception.field, "controller.bogus")

    def test_malformed_jobs_environment(self):
        """Test a non-integer worker count in the environment"""
        with self.assertRaises(ConfigValidationFailed) as context:
            RunConfig.load(environ={"VOLERGO_JOBS": "many"})
        self.assertEqual(context.exception.field, "jobs")

    def test_missing_and_unreadable_files(self):
        """Test missing files and YAML syntax errors"""
        with self.assertRaises(ConfigFileNotFound):
            RunConfig.load("/work/absent.yaml", environ={})
        self.fs.create_file("/work/broken.yaml", contents="task:\n  seed: [1, 2\n")
        with self.assertRaises(ConfigFileUnreadable) as context:
            RunConfig.load("/work/broken.yaml", environ={})
        self.fs.create_file("/work/list.yaml", contents="- 1\n- 2\n")
        with self.assertRaises(ConfigFileUnreadable):
            RunConfig.load("/work/list.yaml", environ={})

    def test_echo_reproduces_configuration(self):
        """Test the echoed configuration loads back to the same document"""
        config = RunConfig.load(overrides=["--task.seed=9", "--space.lengths=[2, 1]"], environ={})
        path = config.echo("/out/run")
        self.assertEqual(os.path.basename(path), "config.resolved.json")
        with open(path, encoding="UTF-8") as file:
            self.assertEqual(json.load(file), config.data)
        self.assertEqual(RunConfig.load(path, environ={}).data, config.data)

    def test_updated_validates(self):
        """Test updated returns a new validated copy"""
        config = RunConfig.load(environ={})
        changed = config.updated({"task.seed": 3})
        self.assertEqual(changed.get("task.seed"), 3)
        self.assertEqual(config.get("task.seed"), 0)
        with self.assertRaises(ConfigValidationFailed):
            config.updated({"task.suite": "underwater"})


class TestConfigReference(TestCase):
    def test_every_leaf_is_documented(self):
        """Test the reference lists every key with its default"""
        reference = config_reference()
        self.assertIn("controller.horizon_steps", reference)
        self.assertIn("task.search.detection_radius_fraction", reference)
        self.assertIn("volumetric.camera.tilt_deg", reference)
        self.assertTrue(reference.startswith("# "))
        self.assertNotIn("`controller`", reference)
