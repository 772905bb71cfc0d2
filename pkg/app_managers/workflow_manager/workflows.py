import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List

import app_managers.core.types as CoreTypes
from app_managers.core.errors import BudgetExceededError, InconsistencyError, SearchExhaustedError, ToolkitError
from app_managers.helpers import printline, status
from app_managers.workflow_manager.reports import build_report, write_report
from app_managers.workflow_manager.types import ToolkitTask, ToolkitTaskStatus, ToolkitTaskType
from geometry_managers.point_files import read_points
from geometry_managers.ruled_surfaces import bese_audit
from lattice_managers.lattice import audit_lattice, load_gram
from quartic_managers.analysis import analyze_quartic, find_nodes
from quartic_managers.containment import contains_plane, contains_quadric_surface
from quartic_managers.defect import factoriality_verdict
from quartic_managers.family import generate_example
from quartic_managers.instance_files import read_instance, write_instance
from quartic_managers.models import birational_models, lines_through_node, node_on_Y
from quartic_managers.types import QuarticInput, node_config


@dataclass(kw_only=True)
class ToolkitWorkflowManager:
    run_config: CoreTypes.RunConfig
    tasks: List[ToolkitTask] = field(default_factory=list)

    def _run(self, task_type: ToolkitTaskType, body: Callable[[ToolkitTask], Dict]) -> ToolkitTask:
        task = ToolkitTask(task_type=task_type)
        self.tasks.append(task)
        task.set_task_status(ToolkitTaskStatus.sts_in_progress, "Running")
        try:
            payload = body(task)
        except (BudgetExceededError, SearchExhaustedError) as exc:
            task.set_task_status(ToolkitTaskStatus.sts_budget_exceeded, str(exc), {"error": str(exc)})
            return task
        except InconsistencyError as exc:
            task.set_task_status(ToolkitTaskStatus.sts_inconsistent, str(exc), {"error": str(exc)})
            return task
        except ToolkitError as exc:
            task.set_task_status(ToolkitTaskStatus.sts_failed, str(exc), {"error": str(exc)})
            return task
        if task.status is ToolkitTaskStatus.sts_in_progress:
            task.set_task_status(ToolkitTaskStatus.sts_success, "Completed", payload)
        else:
            task.task_object = payload
        return task

    def _load_instance(self) -> QuarticInput:
        cfg = self.run_config
        inp = read_instance(cfg.input_path)
        if cfg.points_path:
            points = read_points(cfg.points_path, field=inp.field, ambient=4)
            inp = dataclasses.replace(inp, supplied_points=points)
        return inp

    def analyze(self) -> ToolkitTask:
        printline()
        status(f"Triggering Quartic Analysis workflow. Input: {self.run_config.input_path}")

        def body(task: ToolkitTask) -> Dict:
            cfg = self.run_config
            inp = self._load_instance()
            analysis = analyze_quartic(inp, cfg.working_field, cfg.budget, cfg.max_extension)
            report = build_report(cfg.command, str(inp.field), analysis.to_json())
            if analysis.findings:
                task.set_task_status(ToolkitTaskStatus.sts_inconsistent, "; ".join(analysis.findings))
            return report

        return self._run(ToolkitTaskType.analyze_task, body)

    def verdict(self) -> ToolkitTask:
        printline()
        status(f"Triggering Verdict workflow. Input: {self.run_config.input_path}")

        def body(task: ToolkitTask) -> Dict:
            cfg = self.run_config
            inp = self._load_instance()
            nodes, _, node_field = find_nodes(inp, cfg.working_field, cfg.budget)
            nodal = all(n.is_node for n in nodes)
            plane = quadric = None
            if nodal and 9 <= len(nodes) <= 12:
                plane = contains_plane(inp.F, cfg.budget).value
                if len(nodes) == 12 and plane is False:
                    candidate = None if inp.decomposition is None else (inp.decomposition.L, inp.decomposition.Q)
                    quadric = contains_quadric_surface(inp.F, candidate, cfg.budget).value
            verdict = factoriality_verdict(len(nodes), plane, quadric, node_config(nodes, node_field), nodal=nodal)
            if not verdict.consistent:
                task.set_task_status(ToolkitTaskStatus.sts_inconsistent, "verdict contradicts the computed defect")
            return build_report(cfg.command, str(inp.field), verdict.to_json())

        return self._run(ToolkitTaskType.verdict_task, body)

    def generate(self) -> ToolkitTask:
        printline()
        cfg = self.run_config
        status(f"Triggering Example Generation workflow. Seed: {cfg.seed}, p: {cfg.p}")

        def body(task: ToolkitTask) -> Dict:
            example = generate_example(cfg.seed, cfg.p, cfg.attempts, cfg.budget, cfg.extension_budget)
            models = birational_models(example.instance)
            model_reports = []
            for model in models:
                model_reports.append(
                    {
                        **model.to_json(),
                        "node_check": node_on_Y(model).to_json(),
                        "lines_through_node": lines_through_node(model, cfg.max_extension, cfg.budget).to_json(),
                    }
                )
            out_dir = Path(cfg.output_dir)
            stem = f"example_seed{cfg.seed}_p{cfg.p}"
            comments = [f"generated with seed {cfg.seed} over GF({cfg.p})"]
            comments += [f"node: {', '.join(str(v) for v in n.point.to_json())}" for n in example.nodes]
            comments += [f"{m['name']}: {' = 0, '.join(m['equations'])} = 0" for m in model_reports]
            write_instance(str(out_dir / f"{stem}.txt"), example.instance, comments)
            result = {**example.to_json(), "models": model_reports, "instance_file": f"{stem}.txt"}
            report = build_report(cfg.command, str(example.instance.field), result)
            write_report(report, str(out_dir / f"{stem}.json"))
            status(f"Wrote {stem}.txt and {stem}.json to {out_dir}")
            return report

        return self._run(ToolkitTaskType.generate_task, body)

    def audit_bese(self) -> ToolkitTask:
        printline()
        status("Triggering Ruled Surface Audit workflow.")
        return self._run(
            ToolkitTaskType.audit_bese_task,
            lambda task: build_report(self.run_config.command, "QQ", bese_audit()),
        )

    def audit_lattice(self) -> ToolkitTask:
        printline()
        cfg = self.run_config
        status(f"Triggering Lattice Audit workflow. Gram file: {cfg.gram_path}")

        def body(task: ToolkitTask) -> Dict:
            gram = load_gram(cfg.gram_path) if cfg.gram_path else None
            return build_report(cfg.command, "ZZ", audit_lattice(gram, cfg.window))

        return self._run(ToolkitTaskType.audit_lattice_task, body)
