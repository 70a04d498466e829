"""Argument parser for the ``kepr`` command."""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, NoReturn

from kepr import __version__
from kepr.config.pipeline import DefinitionSelection, Similarity
from kepr.exceptions import UsageError
from kepr.models import MatchMode


class KeprArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as UsageError instead of exiting with status 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="pipeline config file (JSON)")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--out", type=Path, help="output file (default: standard output)")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    return common


def _add_resources(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stop-words", dest="stop_words", type=Path)
    parser.add_argument("--lexicon", type=Path)


def build_parser(handlers: Dict[str, Callable]) -> KeprArgumentParser:
    """Parser with one subcommand per pipeline stage.

    Args:
        handlers: Subcommand name to handler; the chosen one is stored as
            ``args.handler``
    """
    common = _common_options()
    parser = KeprArgumentParser(
        prog="kepr",
        description="Knowledge-enhanced generate-then-rank answering of prototypical questions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=KeprArgumentParser)
    sub.required = True

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(handler=handlers[name])
        return p

    p = command("build-idf", "Build an IDF table over a question corpus")
    p.add_argument("--in", dest="input", type=Path, help="questions or dataset file")
    p.add_argument("--dataset", type=Path)
    _add_resources(p)

    p = command("extract-keywords", "Extract the top-m TF-IDF keywords of each question")
    p.add_argument("--in", dest="input", type=Path)
    p.add_argument("--idf", dest="idf_table", type=Path)
    p.add_argument("--m", type=int)
    p.add_argument("--gold", type=Path, help="gold keyword lists; report macro accuracy")
    _add_resources(p)

    p = command("rewrite", "Rewrite questions into Cloze-style statements")
    p.add_argument("--in", dest="input", type=Path)
    p.add_argument("--rules", type=Path)

    p = command("build-index", "Merge a dictionary dump into an index file")
    p.add_argument("--dump", dest="dictionary", type=Path)

    p = command("retrieve", "Select a dictionary definition for each question keyword")
    p.add_argument("--in", dest="input", type=Path)
    p.add_argument("--idf", dest="idf_table", type=Path)
    p.add_argument("--dictionary", type=Path)
    p.add_argument("--m", type=int)
    p.add_argument(
        "--selection", dest="definition_selection", choices=[s.value for s in DefinitionSelection]
    )
    p.add_argument("--similarity", choices=[s.value for s in Similarity])
    _add_resources(p)

    p = command("generate", "Generate answer candidates from retrieved knowledge")
    p.add_argument("--in", dest="input", type=Path, help="retrieve output or questions")
    p.add_argument("--fixture", dest="generator_fixture", type=Path)
    p.add_argument("--beam-width", dest="beam_width", type=int)
    p.add_argument("--max-answer-tokens", dest="max_answer_tokens", type=int)
    p.add_argument("--rules", type=Path)
    p.add_argument("--no-rewrite", dest="use_rewrite", action="store_const", const=False)

    p = command("dedup", "Deduplicate candidates and keep the most confident")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--retain", type=int)
    _add_resources(p)

    p = command("build-ranker-corpus", "Build balanced ranker training pairs")
    p.add_argument("--dataset", type=Path)
    p.add_argument("--n", type=int)
    _add_resources(p)

    p = command("train-scorer", "Train the reference logistic scorer")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--validation", type=Path, help="held-out corpus to report loss and accuracy")
    p.add_argument("--lr", dest="learning_rate", type=float)
    p.add_argument("--epochs", type=int)
    _add_resources(p)

    p = command("rank", "Rank deduplicated candidates by plausibility")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--model", type=Path)
    p.add_argument("--scorer-fixture", dest="scorer_fixture", type=Path)
    p.add_argument("--final-count", dest="final_count", type=int)
    _add_resources(p)

    p = command("evaluate", "Score predictions with weighted accuracy")
    p.add_argument("--predictions", type=Path, required=True)
    p.add_argument("--dataset", type=Path)
    p.add_argument("--policy", dest="match_policy", choices=[m.value for m in MatchMode])
    p.add_argument(
        "--schemes", nargs="+", default=[], help="extra truncation schemes, e.g. Ans@12"
    )
    _add_resources(p)

    p = command("pipeline", "Run every stage end to end")
    p.add_argument("--in", dest="input", type=Path, help="questions (default: config dataset)")
    p.add_argument("--errors", type=Path, help="per-question error log")
    p.add_argument("--workers", type=int)

    return parser
