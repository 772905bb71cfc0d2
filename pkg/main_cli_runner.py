import argparse
import sys

import app_managers.workflow_manager.main as WorkflowManager


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Decide and audit Q-factoriality of nodal quartic threefolds.",
        add_help=True,
    )
    common = argparse.ArgumentParser(add_help=False)
    conf_args = common.add_argument_group("configuration-args", "Configuration Arguments")
    conf_args.add_argument(
        "--config",
        type=str,
        default=None,
        metavar="/full/path/of/the/configuration/file.yaml",
        help="YAML configuration file with toolkit defaults. Command line switches override its values.",
    )
    conf_args.add_argument(
        "--quiet",
        default=False,
        action="store_true",
        help="Silence progress output on stderr.",
    )
    conf_args.add_argument(
        "--out",
        type=str,
        default=None,
        help="Report file path (generate: output directory). Reports go to stdout when omitted.",
    )
    conf_args.add_argument(
        "--budget",
        type=int,
        default=None,
        help="Maximum number of projective points an enumeration may visit.",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("analyze", "Run the full analysis pipeline on a quartic."), ("verdict", "Run the decision tree only.")):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("--input", type=str, required=True, metavar="F.txt", help="Quartic instance file.")
        cmd.add_argument(
            "--field",
            type=str,
            default=None,
            metavar="p=11,k=2",
            help="Field for the singular point search (q for the rationals). Defaults to the field of the input.",
        )
        cmd.add_argument("--points", type=str, default=None, metavar="pts.txt", help="Node list to certify instead of searching.")
        cmd.add_argument(
            "--max-extension",
            type=int,
            default=None,
            dest="max_extension",
            help="Largest extension degree for the line factor search of plane sections.",
        )

    gen = sub.add_parser("generate", parents=[common], help="Generate a Q*Q' - L*C example with twelve rational nodes.")
    gen.add_argument("--seed", type=int, default=None, help="Seed of the deterministic search.")
    gen.add_argument("--p", type=int, default=None, help="Odd prime of the base field.")
    gen.add_argument("--attempts", type=int, default=None, help="Number of random decompositions to try.")
    gen.add_argument(
        "--max-extension",
        type=int,
        default=None,
        dest="max_extension",
        help="Largest extension degree for the lines through the node of Y.",
    )

    audit = sub.add_parser("audit", parents=[common], help="Recompute the ruled surface or lattice arithmetic.")
    audit.add_argument("which", choices=["bese", "lattice"], help="Which audit to run.")
    audit.add_argument("--gram", type=str, default=None, metavar="custom.json", help="Gram table for the lattice audit.")
    audit.add_argument("--window", type=int, default=None, help="Search window |m| <= window for the lattice audit.")
    return parser


if __name__ == "__main__":
    args = build_parser().parse_args()
    sys.exit(WorkflowManager.trigger_workflows(args=args))
