"""
JSON encoders, command documents and user-facing error texts
"""

import json
from typing import Dict, List, Optional, Sequence

import numpy as np
from sympy import Rational
from sympy.polys.matrices import DomainMatrix

from combinatorics import BetaMap, Permutation
from config import CFG
from geometry import ConormalPair, CriticalPoint, NormalFormReport, SliceData
from hecke import HeckeElement
from linalg import to_rows
from morse_modules import ModuleRep, VerificationReport
from tracker import TrackerProblem, TrackResult


class ReportFormatter:
    """Encodes engine values as JSON-ready data"""

    @staticmethod
    def rational(q) -> str:
        """'p/q', or 'p' for integers"""
        q = Rational(q)
        return str(q.p) if q.q == 1 else f"{q.p}/{q.q}"

    @staticmethod
    def complex_pair(z, digits: int = 12) -> List[float]:
        z = complex(z)
        return [round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0]

    @staticmethod
    def exact_matrix(M) -> List[List[str]]:
        rows = to_rows(M) if isinstance(M, DomainMatrix) else M.tolist()
        return [[ReportFormatter.rational(x) for x in row] for row in rows]

    @staticmethod
    def float_matrix(M: np.ndarray) -> List[List[List[float]]]:
        return [[ReportFormatter.complex_pair(x) for x in row] for row in np.asarray(M)]

    @staticmethod
    def permutation(w: Permutation) -> List[int]:
        return list(w.images)

    @staticmethod
    def beta(b: BetaMap) -> List[int]:
        return list(b.assignment)

    @staticmethod
    def hecke(x: HeckeElement) -> List:
        return [[images, coeff] for images, coeff in x.to_pairs()]

    @staticmethod
    def finite(x) -> Optional[float]:
        """Float, or None for inf/nan (strict JSON)"""
        x = float(x)
        return x if np.isfinite(x) else None

    @staticmethod
    def label(label) -> List[int]:
        return ReportFormatter.beta(label) if isinstance(label, BetaMap) else ReportFormatter.permutation(label)


class DocumentBuilder:
    """Builds the JSON document of each command"""

    @staticmethod
    def module_rep(rep: ModuleRep, microlocal: Sequence[tuple] = ()) -> Dict:
        fmt = ReportFormatter
        return {
            "case": rep.case_tag,
            "partition": list(rep.partition.parts),
            "dim": rep.dim,
            "basis": [fmt.label(b) for b in rep.basis_labels],
            "family": {f"sigma_{i}": fmt.exact_matrix(M) for i, M in enumerate(rep.family_generators, start=1)},
            "microlocal": {name: fmt.exact_matrix(rep.microlocal(c)) for name, c in microlocal},
        }

    @staticmethod
    def verification(report: VerificationReport) -> Dict:
        return report.to_dict()

    @staticmethod
    def pair(pair: ConormalPair) -> Dict:
        fmt = ReportFormatter
        doc = {
            "case": pair.case_tag,
            "A": fmt.exact_matrix(pair.A),
            "B": fmt.exact_matrix(pair.B),
            "u": [fmt.rational(u) for u in pair.us],
        }
        if pair.form is not None:
            doc["form"] = fmt.exact_matrix(pair.form)
        return doc

    @staticmethod
    def normal_form(report: NormalFormReport) -> Dict:
        fmt = ReportFormatter
        return {
            "passed": report.passed,
            "conormal": report.conormal,
            "orthogonal": report.orthogonal,
            "eigenspaces": [
                {
                    "eigenvalue": fmt.rational(e.eigenvalue) if e.eigenvalue.is_Rational else str(e.eigenvalue),
                    "dim": e.dim,
                    "expected_dim": e.expected_dim,
                    "invariant": e.invariant,
                    "regular": e.regular,
                    "polynomial": [fmt.rational(c) for c in e.poly_coeffs],
                    "degree": e.degree,
                    "residual": fmt.finite(e.residual),
                }
                for e in report.eigenspaces
            ],
        }

    @staticmethod
    def slice_data(data: SliceData) -> Dict:
        return {
            "dim": data.dim,
            "bd_dim": len(data.bd_indices),
            "tangent_dim": data.tangent_dim,
            "fiber_dimension": data.fiber_dimension,
            "transversal": data.transversal,
            "dimension_check": data.dimension_check(),
            "centralizer_identity": data.centralizer_identity(),
        }

    @staticmethod
    def critical_point(point: CriticalPoint) -> Dict:
        fmt = ReportFormatter
        return {
            "beta": fmt.beta(point.beta),
            "matrix": fmt.float_matrix(point.matrix),
            "value": fmt.complex_pair(point.value),
            "predicted": None if point.predicted is None else fmt.complex_pair(point.predicted),
            "newton_residual": point.newton_residual,
            "lagrange_residual": point.lagrange_residual,
            "hessian_min_sv": point.hessian_min_sv,
            "hessian_max_sv": point.hessian_max_sv,
            "morse": point.morse,
        }

    @staticmethod
    def problem(prob: TrackerProblem) -> Dict:
        fmt = ReportFormatter
        return {
            "partition": list(prob.partition.parts),
            "lambdas": [fmt.complex_pair(x) for x in prob.lambdas],
            "us": [fmt.complex_pair(x) for x in prob.us],
            "tau": fmt.complex_pair(prob.tau),
        }

    @staticmethod
    def track(result: TrackResult, prob: TrackerProblem, word: str, colored: bool) -> Dict:
        return {
            "input": dict(DocumentBuilder.problem(prob), braid=word, colored=colored),
            "permutation": list(result.permutation),
            "predicted": None if result.predicted is None else list(result.predicted),
            "verdict": result.verdict,
            "min_gap_observed": ReportFormatter.finite(result.min_gap_observed),
            "steps_used": result.steps_used,
            "refinements": result.refinements,
        }

    @staticmethod
    def dump(command: str, body: Dict) -> str:
        """Versioned, key-sorted JSON; identical inputs give identical bytes"""
        doc = dict(body, schema=CFG.schema_version, command=command)
        return json.dumps(doc, sort_keys=True)


class HelpMessages:
    """CLI texts"""

    @staticmethod
    def get_description() -> str:
        return "Morse groups of nearby cycles for sl_n, sl_n/so_n and sl_2n/sp_2n with small Weyl group S_n."

    @staticmethod
    def get_epilog() -> str:
        return (
            "Conventions: Hecke relation (T - 1)^2 = 0, so sigma_i^-1 -> 2 - T_{s_i}; "
            "braid words are signed generator indices, e.g. '2 -1 3'; "
            "partitions are comma separated, e.g. 1,2. "
            "Exit status: 0 all checks pass, 1 a verification failed, 2 bad input."
        )


class ErrorMessages:
    """Error messages"""

    @staticmethod
    def get_error_message(error_type: str, details: str = "") -> str:
        """Get error message based on type"""
        messages = {
            "partition": f"Invalid partition: {details}\nUse comma separated positive integers, e.g. --partition 1,2",
            "braid": f"Invalid braid word: {details}\nUse signed generator indices, e.g. --braid '2 -1 3'",
            "color": f"Braid is not in the colored braid group: {details}\nOnly strands of equal part size may be exchanged",
            "size": f"Size mismatch: {details}",
            "well_defined": f"Right multiplication does not descend to the induced module: {details}",
            "geometry": f"Geometry input rejected: {details}",
            "geometry_check": f"Geometry check failed: {details}",
            "convergence": f"Newton iteration failed: {details}\nTry a smaller --tau",
            "collision": f"Critical values collided: {details}\nTry another --seed or more generic --us",
            "config": f"Configuration problem: {details}",
            "general": f"An error occurred: {details[:200]}",
        }
        return messages.get(error_type, messages["general"])


formatter = ReportFormatter()
documents = DocumentBuilder()
help_msgs = HelpMessages()
errors = ErrorMessages()

__all__ = [
    'formatter', 'documents', 'help_msgs', 'errors',
    'ReportFormatter', 'DocumentBuilder', 'HelpMessages', 'ErrorMessages',
]
