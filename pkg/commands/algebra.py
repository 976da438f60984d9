# commands/algebra.py
"""
Algebra Commands

Verbs:
1. chi, the Euler characteristics of a module
2. snf, the Smith normal form of a matrix read from JSON
"""

from commands import emit, read_expression, register, say
from models.fgmodule import chi as chi_p
from models.matrix import smith_normal_form
from services.export import chi_frame, load_json, matrix_from_json, snf_to_json


def _chi_arguments(parser):
    parser.add_argument("expr", help="module expression, or @FILE")
    parser.add_argument("-p", "--prime", type=int, help="report a single prime (0 for the rank)")
    parser.add_argument("--json", action="store_true", help="print JSON instead of a table")


@register("chi", "Euler characteristics of a module", _chi_arguments)
def chi(args) -> int:
    X = read_expression(args.expr)
    if args.prime is not None:
        value = chi_p(X, args.prime)
        print("infinite" if value == float("inf") else value)
        return 0
    frame = chi_frame(X)
    if args.json:
        emit(dict(zip(frame["p"].astype(str), frame["chi"])))
    else:
        say(args, f"module: {X}")
        print(frame.to_string(index=False))
    return 0


def _snf_arguments(parser):
    parser.add_argument("file", help="IntMatrix JSON file, or - for stdin")


@register("snf", "Smith normal form of an integer matrix", _snf_arguments)
def snf(args) -> int:
    emit(snf_to_json(smith_normal_form(matrix_from_json(load_json(args.file)))))
    return 0
