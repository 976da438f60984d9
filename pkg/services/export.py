# services/export.py
"""
Export Service

This module converts the library's values to and from JSON documents, and
builds the pandas tables the command line prints. It covers:
1. Matrices, Smith forms, lattices and presentations
2. Modules, descriptors, short exact sequences and derivations
3. Sandwich reports and verdicts
4. Universe listings and χ tables as DataFrames

Large integers (matrix and lattice entries) are written as decimal strings;
readers accept either strings or JSON integers.
"""

import json
import sys
from typing import Any, Dict, List, Sequence

import pandas as pd

from models.derivation import Derivation, DerivationStep, Position, Premise, Rule
from models.descriptor import Empty, IMod, Outside, SubcatDescriptor, TorsionF
from models.errors import ModuleParseError
from models.fgmodule import FGModule, Presentation, chi, parse_module
from models.lattice import Lattice, lattice_from_generators
from models.matrix import IntMatrix, SNFResult
from services.oracle import Report
from services.ses import SES, Verdict, make_ses
from services.subcat import classification_line


def _integer(value: Any) -> int:
    if isinstance(value, bool):
        raise ModuleParseError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value)
    raise ModuleParseError(f"expected an integer, got {value!r}")


def _field(obj: Dict, key: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ModuleParseError(f"missing field {key!r}")
    return obj[key]


# Matrices

def matrix_to_json(M: IntMatrix) -> Dict:
    return {"rows": M.rows, "cols": M.cols, "entries": [[str(x) for x in row] for row in M.tolist()]}


def matrix_from_json(obj: Dict) -> IntMatrix:
    rows, cols = _integer(_field(obj, "rows")), _integer(_field(obj, "cols"))
    entries = [[_integer(x) for x in row] for row in _field(obj, "entries")]
    if len(entries) != rows or any(len(row) != cols for row in entries):
        raise ModuleParseError(f"entries do not match the declared shape {rows}x{cols}")
    return IntMatrix(entries, rows=rows, cols=cols)


def snf_to_json(result: SNFResult) -> Dict:
    return {
        "U": matrix_to_json(result.U),
        "D": matrix_to_json(result.D),
        "V": matrix_to_json(result.V),
        "invariant_factors": [str(d) for d in result.invariant_factors],
    }


# Modules and lattices

def module_to_json(X: FGModule) -> Dict:
    return {"rank": X.rank, "torsion": {str(int(p)): list(part) for p, part in X.torsion}}


def module_from_json(obj: Any) -> FGModule:
    """Accepts the structured form, an {"expr": ...} object or a bare expression string."""
    if isinstance(obj, str):
        return parse_module(obj)
    if isinstance(obj, dict) and "expr" in obj:
        return parse_module(obj["expr"])
    try:
        torsion = {_integer(p): [_integer(e) for e in part] for p, part in _field(obj, "torsion").items()}
        return FGModule(_integer(_field(obj, "rank")), torsion)
    except ModuleParseError:
        raise
    except (AttributeError, ValueError, TypeError) as error:
        raise ModuleParseError(f"invalid module document: {error}") from error


def lattice_to_json(H: Lattice) -> Dict:
    return {"support": [str(p) for p in H.support], "basis": [[str(x) for x in v] for v in H.vectors()]}


def lattice_from_json(obj: Dict) -> Lattice:
    support = [_integer(p) for p in _field(obj, "support")]
    basis = [[_integer(x) for x in v] for v in _field(obj, "basis")]
    return lattice_from_generators(support, basis)


def presentation_to_json(P: Presentation) -> Dict:
    return {"generators": P.generators, "relations": matrix_to_json(P.relations)}


def presentation_from_json(obj: Dict) -> Presentation:
    return Presentation(_integer(_field(obj, "generators")), matrix_from_json(_field(obj, "relations")))


# Descriptors

def descriptor_to_json(d: SubcatDescriptor) -> Dict:
    if isinstance(d, Empty):
        return {"kind": "empty"}
    if isinstance(d, IMod):
        return {"kind": "imod", "k": d.k}
    return {
        "kind": "torsionF",
        "support": [str(p) for p in d.support],
        "basis": [[str(x) for x in v] for v in d.lattice.vectors()],
        "outside": d.outside.value,
    }


def descriptor_from_json(obj: Dict) -> SubcatDescriptor:
    kind = _field(obj, "kind")
    if kind == "empty":
        return Empty()
    if kind == "imod":
        return IMod(_integer(_field(obj, "k")))
    if kind == "torsionF":
        support = [_integer(p) for p in _field(obj, "support")]
        basis = [[_integer(x) for x in v] for v in _field(obj, "basis")]
        try:
            outside = Outside(obj.get("outside", Outside.FORBIDDEN.value))
        except ValueError:
            raise ModuleParseError(f"unknown outside policy {obj.get('outside')!r}") from None
        return TorsionF.of(support, basis, outside)
    raise ModuleParseError(f"unknown descriptor kind {kind!r}")


# Sequences and derivations

def ses_to_json(s: SES) -> Dict:
    return {
        "sub": presentation_to_json(s.A),
        "middle": presentation_to_json(s.B),
        "quotient": presentation_to_json(s.C),
        "f": matrix_to_json(s.f.matrix),
        "g": matrix_to_json(s.g.matrix),
    }


def ses_from_json(obj: Dict) -> SES:
    return make_ses(presentation_from_json(_field(obj, "sub")),
                    presentation_from_json(_field(obj, "middle")),
                    presentation_from_json(_field(obj, "quotient")),
                    matrix_from_json(_field(obj, "f")),
                    matrix_from_json(_field(obj, "g")))


def derivation_to_json(d: Derivation) -> Dict:
    return {
        "generators": [module_to_json(g) for g in d.generators],
        "target": module_to_json(d.target),
        "steps": [
            {
                "rule": step.rule.value,
                "premises": [{"index": p.index, "position": p.position.value} for p in step.premises],
                "ses": ses_to_json(step.ses) if step.ses is not None else None,
                "conclusion": module_to_json(step.conclusion),
            }
            for step in d.steps
        ],
    }


def derivation_from_json(obj: Dict) -> Derivation:
    raw_steps = _field(obj, "steps")
    if not isinstance(raw_steps, list):
        raise ModuleParseError(f"steps must be a list, got {raw_steps!r}")
    steps = []
    for raw in raw_steps:
        if not isinstance(raw, dict):
            raise ModuleParseError(f"derivation step must be an object, got {raw!r}")
        try:
            rule = Rule(_field(raw, "rule"))
            premises = tuple(Premise(_integer(_field(p, "index")), Position(_field(p, "position")))
                             for p in raw.get("premises", []))
        except ModuleParseError:
            raise
        except ValueError as error:
            raise ModuleParseError(f"invalid step: {error}") from error
        ses = ses_from_json(raw["ses"]) if raw.get("ses") is not None else None
        steps.append(DerivationStep(rule, premises, ses, module_from_json(_field(raw, "conclusion"))))
    return Derivation(tuple(module_from_json(g) for g in _field(obj, "generators")),
                      tuple(steps),
                      module_from_json(_field(obj, "target")))


def verdict_to_json(v: Verdict) -> Dict:
    return {
        "verdict": "Verified" if v.verified else "Failure",
        "reason": v.reason.value if v.reason is not None else None,
        "step": v.step,
        "detail": v.detail,
    }


# Reports

def report_to_json(report: Report) -> Dict:
    return {
        "generators": [module_to_json(g) for g in report.generators],
        "descriptor": descriptor_to_json(report.descriptor),
        "classification": classification_line(report.descriptor),
        "verdict": report.verdict,
        "universe_size": report.universe_size,
        "fixpoint_size": report.fixpoint_size,
        "predicate_size": report.predicate_size,
        "witnesses": [module_to_json(X) for X in report.witnesses],
        "fixpoint": [module_to_json(X) for X in sorted(report.fixpoint, key=str)],
        "predicate": [module_to_json(X) for X in sorted(report.predicate, key=str)],
    }


# Files

def load_json(source: str) -> Any:
    """Read a JSON document from a path, or from stdin when the path is '-'."""
    try:
        if source == "-":
            return json.load(sys.stdin)
        with open(source, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as error:
        raise ModuleParseError(f"{source} is not valid JSON: {error}") from error


def dump_json(document: Any) -> str:
    return json.dumps(document, indent=2)


# Tables

def universe_frame(modules: Sequence[FGModule], primes: Sequence[int]) -> pd.DataFrame:
    """One row per module: expression, rank and the length at each prime."""
    rows: List[Dict] = []
    for i, X in enumerate(modules):
        row = {"#": i, "module": str(X), "rank": X.rank}
        for p in primes:
            row[f"len_{p}"] = X.partition(p).total
        rows.append(row)
    return pd.DataFrame(rows, columns=["#", "module", "rank"] + [f"len_{p}" for p in primes])


def chi_frame(X: FGModule, primes: Sequence[int] = None) -> pd.DataFrame:
    """χ_p of a module at 0 and at each torsion prime (or the given primes)."""
    primes = [0] + list(primes if primes is not None else X.primes)
    values = [chi(X, p) for p in primes]
    return pd.DataFrame({
        "p": primes,
        "chi": ["infinite" if v == float("inf") else str(v) for v in values],
    })
