"""
Numeric commands: monodromy tracking of critical values and the conormal
geometry reports
"""

import argparse
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import Rational

from braid import BraidWord, ColoredBraid
from combinatorics import Partition
from config import CFG
from exceptions import ConfigError, GeometryError
from geometry import (
    build_slice, differential_rank, is_conormal, jordan_partition, quotient_map_f,
    realize_conormal, sample_conormal, slice_and_critical_points_I, verify_normal_form,
)
from logger import Logger
from morse_modules import CASES, parse_case
from reports import documents, formatter
from tracker import TrackerProblem, default_problem, track_family_monodromy, track_microlocal_monodromy


def parse_numbers(text: Optional[str], kind=complex) -> Optional[List]:
    """Comma separated numbers; kind=Rational keeps '1/2' exact"""
    if text is None:
        return None
    try:
        return [kind(tok) for tok in text.replace(" ", "").split(",") if tok]
    except (ValueError, TypeError) as e:
        raise ConfigError(f"cannot parse number list '{text}'") from e


def default_us(p: Partition) -> List[Rational]:
    """u_i = i for i < k and the last value fixed by sum n_i u_i = 0"""
    head = [Rational(i) for i in range(1, p.k)]
    last = -sum(n * u for n, u in zip(p.parts, head)) / p.parts[-1]
    return head + [Rational(last)]


class NumericsHandlers:
    """Registers the `track` and `geometry` subcommands"""

    def __init__(self, subparsers, parents: List[argparse.ArgumentParser]):
        self.subparsers = subparsers
        self.parents = parents
        self.setup_handlers()

    def setup_handlers(self):
        """Setup numeric subcommands"""

        track = self.subparsers.add_parser("track", parents=self.parents, help="track critical values along a braid")
        track.add_argument("--partition", required=True, help="comma separated parts, e.g. 1,2")
        track.add_argument("--case", default="I", type=str.upper, choices=CASES)
        track.add_argument("--lambdas", help="n comma separated eigenvalues, complex allowed (1+2j)")
        track.add_argument("--us", help="k comma separated eigenvalues of B")
        track.add_argument("--braid", default="", help="braid word, e.g. '1 -2'; empty word = identity")
        track.add_argument("--colored", action="store_true", help="move the u's along a colored braid on k strands")
        track.set_defaults(handler=self.cmd_track)

        geometry = self.subparsers.add_parser("geometry", parents=self.parents, help="conormal pairs, normal form, critical points")
        geometry.add_argument("--case", default="I", type=str.upper, choices=CASES)
        geometry.add_argument("--partition", required=True, help="comma separated parts, e.g. 1,2")
        geometry.add_argument("--us", help="k comma separated rationals with sum n_i u_i = 0; omit to sample")
        geometry.add_argument("--lambdas", help="n distinct eigenvalues summing to 0 (critical points)")
        geometry.add_argument("--verify", action="store_true", help="run the normal-form verifier")
        geometry.add_argument("--critical-points", action="store_true", dest="critical_points", help="case I slice critical points")
        geometry.set_defaults(handler=self.cmd_geometry)

    def cmd_track(self, args) -> Tuple[Dict, bool]:
        """Handle `track`"""
        case_tag = parse_case(args.case)
        p = Partition.parse(args.partition)
        lambdas = parse_numbers(args.lambdas)
        us = parse_numbers(args.us)
        if lambdas is None or us is None:
            base = default_problem(p, seed=CFG.seed, tau=CFG.tracker_tau)
            lambdas = base.lambdas if lambdas is None else lambdas
            us = base.us if us is None else us
        prob = TrackerProblem(p, lambdas, us, CFG.tracker_tau)

        if args.colored:
            c = ColoredBraid.parse(p, args.braid)
            result = track_microlocal_monodromy(prob, c, case_tag)
            word = c.word
        else:
            word = BraidWord.parse(args.braid, p.n)
            result = track_family_monodromy(prob, word)
        return documents.track(result, prob, word.format(), args.colored), result.passed

    def cmd_geometry(self, args) -> Tuple[Dict, bool]:
        """Handle `geometry`: realize or sample a pair, then the requested reports"""
        case_tag = parse_case(args.case)
        p = Partition.parse(args.partition)
        us = parse_numbers(args.us, Rational)
        if args.critical_points and case_tag != "I":
            raise GeometryError("critical points are computed for case I only")

        if us is not None:
            pair = realize_conormal(case_tag, p, us)
        elif args.critical_points:
            pair = realize_conormal(case_tag, p, default_us(p))
        else:
            pair = sample_conormal(case_tag, p, np.random.default_rng(CFG.seed))

        conormal = is_conormal(pair)
        orbit = jordan_partition(pair.A, case_tag)
        body = {
            "pair": documents.pair(pair),
            "conormal": conormal,
            "orbit": list(orbit.parts),
            "f_of_B": [formatter.rational(e) for e in quotient_map_f(case_tag, pair.B)],
        }
        if case_tag == "I":
            body["differential_rank"] = differential_rank(pair.A)
        passed = conormal and orbit == p

        if args.verify:
            report = verify_normal_form(pair)
            body["normal_form"] = documents.normal_form(report)
            passed = passed and report.passed

        if args.critical_points:
            passed = self._critical_points(args, pair, body) and passed

        if not passed:
            Logger.log(f"geometry case {case_tag} ({p}): checks failed", "WARNING", "CLI")
        return body, passed

    @staticmethod
    def _critical_points(args, pair, body: Dict) -> bool:
        p = pair.partition
        lambdas = parse_numbers(args.lambdas)
        if lambdas is None:
            lambdas = list(np.arange(p.n, dtype=float) - (p.n - 1) / 2)
        data = build_slice(pair)
        points = slice_and_critical_points_I(pair, lambdas, CFG.slice_tau)
        body["slice"] = documents.slice_data(data)
        body["critical_points"] = [documents.critical_point(point) for point in points]

        passed = data.transversal and data.dimension_check() and data.centralizer_identity()
        for point in points:
            scale = max(1.0, abs(point.value))
            matches = point.predicted is None or abs(point.value - point.predicted) <= CFG.exact_tol * scale
            passed = passed and point.morse and matches
        return passed


# Export handler setup function
def setup_numerics_handlers(subparsers, parents: List[argparse.ArgumentParser]):
    """Setup numeric handlers"""
    return NumericsHandlers(subparsers, parents)


__all__ = ['setup_numerics_handlers', 'NumericsHandlers', 'parse_numbers', 'default_us']
