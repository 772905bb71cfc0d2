import sys
from argparse import Namespace

import app_managers.core.initializers as ToolkitInit
import app_managers.core.types as ToolkitTypes
from app_managers.core.errors import ToolkitError
from app_managers.helpers import set_quiet, status
from app_managers.workflow_manager.reports import write_report
from app_managers.workflow_manager.types import ToolkitTask
from app_managers.workflow_manager.workflows import ToolkitWorkflowManager


def trigger_workflows(args: Namespace) -> int:
    """Runs the selected command and returns the process exit code."""
    set_quiet(getattr(args, "quiet", False))
    try:
        run_config = ToolkitInit.initialize(args)
    except ToolkitError as exc:
        print(f"Configuration error: {exc}", file=sys.stderr)
        return exc.exit_code

    workflow_manager = ToolkitWorkflowManager(run_config=run_config)
    commands = ToolkitTypes.SUPPORTED_COMMANDS
    if run_config.command == commands.ANALYZE:
        task = workflow_manager.analyze()
    elif run_config.command == commands.VERDICT:
        task = workflow_manager.verdict()
    elif run_config.command == commands.GENERATE:
        task = workflow_manager.generate()
    elif run_config.audit == commands.AUDIT_BESE:
        task = workflow_manager.audit_bese()
    else:
        task = workflow_manager.audit_lattice()
    return emit(task, run_config.output_path)


def emit(task: ToolkitTask, output_path: str = None) -> int:
    if "error" in task.task_object:
        print(f"Error: {task.task_object['error']}", file=sys.stderr)
        return task.exit_code
    text = write_report(task.task_object, output_path)
    if output_path:
        status(f"Report written to {output_path}")
    else:
        sys.stdout.write(text)
    return task.exit_code
