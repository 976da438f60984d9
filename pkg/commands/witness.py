# commands/witness.py
"""
Witness Commands

Verbs:
1. witness, a derivation of a target module from generators
2. verify, check a stored derivation or a single short exact sequence
"""

import logging

from commands import emit, read_expression, read_expressions, register
from models.errors import IllDefinedMorphismError
from services.export import (
    derivation_from_json,
    derivation_to_json,
    dump_json,
    load_json,
    ses_from_json,
    verdict_to_json,
)
from services.ses import FailureReason, Verdict, verify_ses
from services.witness import derive_witness, verify_derivation

LOGGER = logging.getLogger(__name__)


def _witness_arguments(parser):
    parser.add_argument("--gen", nargs="+", required=True, help="generator expressions")
    parser.add_argument("--target", required=True, help="target expression")
    parser.add_argument("-o", "--output", help="write the derivation to this file instead of stdout")


@register("witness", "derive a target from generators by two-out-of-three steps", _witness_arguments)
def witness(args) -> int:
    derivation = derive_witness(read_expressions(args.gen), read_expression(args.target))
    LOGGER.info("derivation of %s in %d steps", derivation.target, len(derivation))
    document = derivation_to_json(derivation)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(dump_json(document) + "\n")
    else:
        emit(document)
    return 0


def _verify_arguments(parser):
    parser.add_argument("file", help="derivation or SES JSON file, or - for stdin")
    parser.add_argument("--json", action="store_true", help="print the verdict as JSON")


@register("verify", "verify a derivation or a short exact sequence", _verify_arguments)
def verify(args) -> int:
    document = load_json(args.file)
    if isinstance(document, dict) and "steps" in document:
        verdict = verify_derivation(derivation_from_json(document))
    else:
        try:
            verdict = verify_ses(ses_from_json(document))
        except IllDefinedMorphismError as error:
            verdict = Verdict.fail(FailureReason.ILL_DEFINED, str(error))
    if args.json:
        emit(verdict_to_json(verdict))
    else:
        print(verdict)
    return 0 if verdict else 1
