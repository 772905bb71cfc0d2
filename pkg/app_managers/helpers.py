import sys
from os import environ

from app_managers.core.errors import InputError

ENV_PREFIX = "env::"
_QUIET = False


def get_env_var(var_name: str):
    if environ.get(var_name.strip()) is None:
        raise InputError("Cannot find environment variable " + var_name)
    else:
        return environ[var_name.strip()]


def find_replace_env_vars(input: str, env_prefix=ENV_PREFIX):
    if input.startswith(env_prefix):
        input = input.split(env_prefix)[1]
        return get_env_var(input)
    else:
        return input


def env_parse_replace(input):
    if isinstance(input, dict):
        for k, v in input.items():
            if isinstance(v, dict) or isinstance(v, list):
                env_parse_replace(v)
            elif isinstance(v, str):
                input[k] = find_replace_env_vars(v)
    elif isinstance(input, list):
        for k, v in enumerate(input):
            if isinstance(v, dict) or isinstance(v, list):
                env_parse_replace(v)
            elif isinstance(v, str):
                input[k] = find_replace_env_vars(v)


def mandatory_check(key, value):
    if not value:
        raise InputError(key + " is a mandatory attribute. Please populate to ensure correct functionality.")


def positive_check(key, value):
    if value is None or value <= 0:
        raise InputError(f"{key} must be a positive integer, got {value}.")


def set_quiet(flag: bool):
    global _QUIET
    _QUIET = flag


# Progress output goes to stderr; stdout carries only the JSON report.
def status(message: str):
    if not _QUIET:
        print(message, file=sys.stderr)


def printline():
    if not _QUIET:
        print("=" * 80, file=sys.stderr)
