from dataclasses import dataclass, field
from enum import Enum

from app_managers.helpers import status


class ToolkitTaskStatus(Enum):
    sts_not_started = "Not Started"
    sts_in_progress = "In Progress"
    sts_success = "Success"
    sts_failed = "Failed"
    sts_budget_exceeded = "BudgetExceeded"
    sts_inconsistent = "Inconsistent"


EXIT_CODES = {
    ToolkitTaskStatus.sts_success: 0,
    ToolkitTaskStatus.sts_failed: 1,
    ToolkitTaskStatus.sts_budget_exceeded: 2,
    ToolkitTaskStatus.sts_inconsistent: 3,
}


class ToolkitTaskType(Enum):
    analyze_task = "analyze"
    generate_task = "generate"
    audit_bese_task = "audit-bese"
    audit_lattice_task = "audit-lattice"
    verdict_task = "verdict"


@dataclass
class ToolkitTask:
    task_type: ToolkitTaskType
    status: ToolkitTaskStatus = ToolkitTaskStatus.sts_not_started
    status_message: str = field(default="Waiting to start")
    task_object: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.status, 1)

    def print_task_data(self):
        status("{:<15} {:<15} {:<50}".format(self.task_type.value, self.status.value, self.status_message))

    def set_task_status(self, task_status: ToolkitTaskStatus, status_msg: str, object_payload: dict = None):
        self.status = task_status
        self.status_message = status_msg
        if object_payload is not None:
            self.task_object = object_payload
        self.print_task_data()
