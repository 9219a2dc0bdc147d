"""
.. module:: cli.py
   :license: GPL/CeCIL
   :platform: Unix, Windows
   :synopsis: dravlgbt command line interface.

.. moduleauthor:: dravlgbt developers


"""
import argparse
import sys

import dravlgbt
from dravlgbt import constants
from dravlgbt import exceptions



def _get_parser():
    """Returns the command line parser.

    """
    parser = argparse.ArgumentParser(
        "dravlgbt",
        description="Homophobia/transphobia detection in Malayalam & Tamil comments."
        )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    def _add_common(cmd):
        cmd.add_argument(
            "--config",
            help="Path to a run configuration (INI) file",
            dest="config",
            type=str
            )
        cmd.add_argument(
            "--seed",
            help="Random seed (overrides the configuration file)",
            dest="seed",
            type=int
            )
        cmd.add_argument(
            "--out",
            help="Output path (overrides the configuration file)",
            dest="out",
            type=str
            )
        cmd.add_argument(
            "--language",
            help="Dataset language",
            dest="language",
            choices=constants.LANGUAGES,
            type=str
            )
        return cmd

    cmd = _add_common(commands.add_parser("prepare", help="Clean, validate & split a labelled dataset"))
    cmd.add_argument(
        "--dataset",
        help="Path to a comment/category TSV file",
        dest="dataset",
        type=str
        )
    cmd.add_argument(
        "--check-distribution",
        help="Fail if class counts differ from the published corpus",
        dest="check_distribution",
        action="store_true"
        )

    _add_common(commands.add_parser("train", help="Train a model described by a configuration file"))

    cmd = _add_common(commands.add_parser("evaluate", help="Evaluate a model artifact on a labelled split"))
    cmd.add_argument(
        "--model",
        help="Path to a model artifact directory",
        dest="model",
        type=str,
        required=True
        )
    cmd.add_argument(
        "--split",
        help="Path to a labelled TSV file (e.g. test.tsv)",
        dest="split",
        type=str,
        required=True
        )

    cmd = _add_common(commands.add_parser("predict", help="Label the comments of an unlabelled TSV file"))
    cmd.add_argument(
        "--model",
        help="Path to a model artifact directory",
        dest="model",
        type=str,
        required=True
        )
    cmd.add_argument(
        "--input",
        help="Path to an unlabelled TSV file",
        dest="input",
        type=str,
        required=True
        )

    cmd = _add_common(commands.add_parser("report", help="Aggregate JSON evaluation reports into tables"))
    cmd.add_argument(
        "inputs",
        help="Report file(s) and/or directorie(s)",
        nargs="+",
        type=str
        )

    return parser


def _prepare(args):
    if args.config:
        cfg = dravlgbt.load_run_config(args.config, seed=args.seed, language=args.language)
        dataset, language, out = args.dataset or cfg.dataset, cfg.language, args.out or cfg.prepared
        seed, ratios, stratified = cfg.seed, cfg.ratios, cfg.stratified
    else:
        dataset, language, out = args.dataset, args.language, args.out
        seed = constants.DEFAULT_SEED if args.seed is None else args.seed
        ratios, stratified = constants.DEFAULT_SPLIT_RATIOS, True
    if not dataset:
        raise exceptions.InvalidConfiguration("dataset", "pass --dataset or set [run] dataset")
    summary = dravlgbt.prepare(dataset, language, out=out, seed=seed, ratios=ratios,
                               stratified=stratified, check_distribution=args.check_distribution)
    dravlgbt.log("Distribution :: {} :: total={}".format(summary["distribution"], summary["total"]))


def _train(args):
    if not args.config:
        raise exceptions.InvalidConfiguration("config", "train requires --config")
    cfg = dravlgbt.load_run_config(args.config, seed=args.seed, out=args.out, language=args.language)
    out, history = dravlgbt.train(cfg)
    dravlgbt.log("Artifact written :: {} :: {} epochs".format(out, len(history)))


def _evaluate(args):
    report, json_path, _ = dravlgbt.evaluate(args.model, args.split, out=args.out)
    dravlgbt.log("Report written :: {}".format(json_path))


def _predict(args):
    out = args.out or "{}.predictions.tsv".format(args.input)
    dravlgbt.predict(args.model, args.input, out)


def _report(args):
    table = dravlgbt.report(args.inputs, out=args.out)
    print(table, end="")


# Map of command name to handler.
_HANDLERS = {
    "prepare": _prepare,
    "train": _train,
    "evaluate": _evaluate,
    "predict": _predict,
    "report": _report,
}


def main(argv=None):
    """Command line entry point; exits 0 on success, 2 on invalid input, 3 on processing errors.

    """
    args = _get_parser().parse_args(argv)
    try:
        _HANDLERS[args.command](args)
    except exceptions.InputValidationError as err:
        dravlgbt.log_error(err)
        sys.exit(constants.EXIT_VALIDATION_ERROR)
    except exceptions.ProcessingError as err:
        dravlgbt.log_error(err)
        sys.exit(constants.EXIT_RUNTIME_ERROR)
    else:
        sys.exit(constants.EXIT_SUCCESS)


# Main entry point.
if __name__ == '__main__':
    main()
