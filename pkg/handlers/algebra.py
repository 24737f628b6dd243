"""
Algebra commands: dimension of a Morse group and the module dump with its
verification report
"""

import argparse
from typing import Dict, List, Optional, Tuple

from braid import BraidWord, ColoredBraid, colored_generators
from combinatorics import Partition, multinomial_dim
from logger import Logger
from morse_modules import CASES, Generator, family_monodromy_rep, parse_case, verify_rep
from reports import documents, formatter


class AlgebraHandlers:
    """Registers the `dim` and `rep` subcommands"""

    def __init__(self, subparsers, parents: List[argparse.ArgumentParser]):
        self.subparsers = subparsers
        self.parents = parents
        self.setup_handlers()

    def setup_handlers(self):
        """Setup algebra subcommands"""

        dim = self.subparsers.add_parser("dim", parents=self.parents, help="dimension n!/(n_1!...n_k!) of the Morse group")
        dim.add_argument("--partition", required=True, help="comma separated parts, e.g. 1,2")
        dim.set_defaults(handler=self.cmd_dim)

        rep = self.subparsers.add_parser("rep", parents=self.parents, help="family and microlocal matrices with verification")
        rep.add_argument("--case", default="I", type=str.upper, choices=CASES)
        rep.add_argument("--partition", required=True, help="comma separated parts, e.g. 1,2")
        rep.add_argument("--braid", help="family braid word on n strands to evaluate, e.g. '1 -2'")
        rep.add_argument(
            "--colored-braid", action="append", dest="colored_braids", metavar="WORD",
            help="colored braid word on k strands; repeatable; default is the full generating set",
        )
        rep.set_defaults(handler=self.cmd_rep)

    def cmd_dim(self, args) -> Tuple[Dict, bool]:
        """Handle `dim`"""
        p = Partition.parse(args.partition)
        return {"partition": list(p.parts), "dim": multinomial_dim(p)}, True

    def cmd_rep(self, args) -> Tuple[Dict, bool]:
        """Handle `rep`: the module, the requested words and the verifier report"""
        case_tag = parse_case(args.case)
        p = Partition.parse(args.partition)
        rep = family_monodromy_rep(case_tag, p)
        generators = self._colored_generators(p, args.colored_braids)

        report = verify_rep(rep, generators)
        body = documents.module_rep(rep, generators)
        body["verification"] = documents.verification(report)
        if args.braid is not None:
            word = BraidWord.parse(args.braid, p.n)
            body["braid"] = {"word": word.format(), "matrix": formatter.exact_matrix(rep.family_matrix(word))}

        if not report.passed:
            Logger.log(f"rep {case_tag} ({p}): failed {[c.name for c in report.failures()]}", "WARNING", "CLI")
        return body, report.passed

    @staticmethod
    def _colored_generators(p: Partition, words: Optional[List[str]]) -> List[Generator]:
        if not words:
            return colored_generators(p)
        named = []
        for text in words:
            c = ColoredBraid.parse(p, text).check()
            named.append((c.word.format() or "e", c))
        return named


# Export handler setup function
def setup_algebra_handlers(subparsers, parents: List[argparse.ArgumentParser]):
    """Setup algebra handlers"""
    return AlgebraHandlers(subparsers, parents)


__all__ = ['setup_algebra_handlers', 'AlgebraHandlers']
