from dataclasses import dataclass, field
from typing import List

from app_managers.core.errors import InputError
from app_managers.helpers import mandatory_check, positive_check
from arith_managers.fields import ExactField, parse_field_spec

TOOLKIT_VERSION = "1.0.0"
SCHEMA_VERSION = 1


class SupportedCommands:
    ANALYZE = "analyze"
    GENERATE = "generate"
    AUDIT = "audit"
    VERDICT = "verdict"

    AUDIT_BESE = "bese"
    AUDIT_LATTICE = "lattice"

    def list_commands(self) -> List[str]:
        return [self.ANALYZE, self.GENERATE, self.AUDIT, self.VERDICT]

    def list_audits(self) -> List[str]:
        return [self.AUDIT_BESE, self.AUDIT_LATTICE]

    def validate_command(self, command: str) -> bool:
        return command in self.list_commands()


SUPPORTED_COMMANDS = SupportedCommands()


@dataclass(kw_only=True)
class ToolkitDefaults:
    field_spec: str = None
    seed: int = 1
    enumeration_budget: int = 5_000_000
    extension_budget: int = 1_000_000_000
    generator_attempts: int = 200
    generator_p: int = 11
    line_search_max_extension: int = 4
    lattice_window: int = 1000
    output_dir: str = "output"

    def __post_init__(self) -> None:
        positive_check("enumeration_budget", self.enumeration_budget)
        positive_check("extension_budget", self.extension_budget)
        positive_check("generator_attempts", self.generator_attempts)
        positive_check("line_search_max_extension", self.line_search_max_extension)
        if self.lattice_window is None or self.lattice_window < 0:
            raise InputError(f"lattice_window must be a non-negative integer, got {self.lattice_window}.")
        mandatory_check("output_dir", self.output_dir)


@dataclass(kw_only=True)
class RunConfig:
    command: str
    input_path: str = None
    points_path: str = None
    gram_path: str = None
    audit: str = None
    field_spec: str = None
    seed: int = 1
    budget: int = 5_000_000
    extension_budget: int = 1_000_000_000
    attempts: int = 200
    p: int = 11
    max_extension: int = 4
    window: int = 1000
    output_path: str = None
    output_dir: str = "output"
    working_field: ExactField = field(init=False, default=None)

    def __post_init__(self) -> None:
        if not SUPPORTED_COMMANDS.validate_command(self.command):
            raise InputError(
                self.command
                + " is not a supported command. The supported values are "
                + ",".join(SUPPORTED_COMMANDS.list_commands())
            )
        positive_check("budget", self.budget)
        positive_check("extension_budget", self.extension_budget)
        positive_check("attempts", self.attempts)
        positive_check("max_extension", self.max_extension)
        if self.window < 0:
            raise InputError(f"window must be a non-negative integer, got {self.window}.")
        if self.command in (SUPPORTED_COMMANDS.ANALYZE, SUPPORTED_COMMANDS.VERDICT):
            mandatory_check("input", self.input_path)
        if self.command == SUPPORTED_COMMANDS.AUDIT and self.audit not in SUPPORTED_COMMANDS.list_audits():
            raise InputError(
                f"{self.audit} is not a supported audit. The supported values are "
                + ",".join(SUPPORTED_COMMANDS.list_audits())
            )
        if self.command == SUPPORTED_COMMANDS.GENERATE:
            # the generator field is always GF(p)
            self.working_field = parse_field_spec(f"p={self.p}")
            if not self.working_field.is_prime_field:
                raise InputError(f"generate needs a prime p, got {self.p}.")
        elif self.field_spec is not None:
            self.working_field = parse_field_spec(self.field_spec)
