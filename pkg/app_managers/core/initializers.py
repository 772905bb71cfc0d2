from argparse import Namespace
from pathlib import Path

import yaml

import app_managers.core.types as types
import app_managers.helpers as helpers
from app_managers.core.errors import InputError


def load_defaults(config_yaml_path: str = None) -> types.ToolkitDefaults:
    if not config_yaml_path:
        return types.ToolkitDefaults()
    if not Path(config_yaml_path).is_file():
        raise InputError("Configuration file " + config_yaml_path + " does not exist.")
    helpers.status("Trying to parse Configuration File: " + config_yaml_path)
    with open(config_yaml_path, "r") as config_file:
        toolkit_config = yaml.safe_load(config_file) or {}
    helpers.env_parse_replace(toolkit_config)

    temp = toolkit_config.get("configs", {}).get("toolkit", {})
    return types.ToolkitDefaults(
        field_spec=temp.get("field", None),
        seed=int(temp.get("seed", 1)),
        enumeration_budget=int(temp.get("enumeration_budget", 5_000_000)),
        extension_budget=int(temp.get("extension_budget", 1_000_000_000)),
        generator_attempts=int(temp.get("generator_attempts", 200)),
        generator_p=int(temp.get("generator_p", 11)),
        line_search_max_extension=int(temp.get("line_search_max_extension", 4)),
        lattice_window=int(temp.get("lattice_window", 1000)),
        output_dir=temp.get("output_dir", "output"),
    )


def _pick(args: Namespace, name: str, default):
    value = getattr(args, name, None)
    return default if value is None else value


def initialize(args: Namespace) -> types.RunConfig:
    """Configuration file defaults overridden by command line switches."""
    defaults = load_defaults(getattr(args, "config", None))
    # generate writes a directory, every other command a single report
    out = getattr(args, "out", None)
    is_generate = args.command == types.SUPPORTED_COMMANDS.GENERATE
    return types.RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        points_path=getattr(args, "points", None),
        gram_path=getattr(args, "gram", None),
        audit=getattr(args, "which", None),
        field_spec=_pick(args, "field", defaults.field_spec),
        seed=_pick(args, "seed", defaults.seed),
        budget=_pick(args, "budget", defaults.enumeration_budget),
        extension_budget=defaults.extension_budget,
        attempts=_pick(args, "attempts", defaults.generator_attempts),
        p=_pick(args, "p", defaults.generator_p),
        max_extension=_pick(args, "max_extension", defaults.line_search_max_extension),
        window=_pick(args, "window", defaults.lattice_window),
        output_path=None if is_generate else out,
        output_dir=out if is_generate and out else defaults.output_dir,
    )
