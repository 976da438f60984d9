# commands/classify.py
"""
Classification Commands

Verbs:
1. closure, the descriptor of the 2-3 closure of a generator list
2. member, membership of a module in a stored descriptor
3. k0, the correspondence with subgroups of K0 of S-torsion modules
"""

import argparse

from commands import emit, prime_list, read_expression, read_expressions, register, say
from models.lattice import lattice_from_generators
from services.export import descriptor_from_json, descriptor_to_json, lattice_to_json, load_json
from services.subcat import (
    classification_line,
    closure as closure_of,
    k0_failure_witness,
    k0_rank_image,
    member as is_member,
    subcat_to_subgroup,
    subgroup_to_subcat,
)


def _closure_arguments(parser):
    parser.add_argument("exprs", nargs="*", help="generator expressions, or @FILE")


@register("closure", "descriptor of the 2-3 closure of some modules", _closure_arguments)
def closure(args) -> int:
    descriptor = closure_of(read_expressions(args.exprs))
    say(args, classification_line(descriptor))
    emit(descriptor_to_json(descriptor))
    return 0


def _member_arguments(parser):
    parser.add_argument("--desc", required=True, help="descriptor JSON file, or - for stdin")
    parser.add_argument("expr", help="module expression, or @FILE")


@register("member", "test membership in a descriptor (exit 0 if a member)", _member_arguments)
def member(args) -> int:
    descriptor = descriptor_from_json(load_json(args.desc))
    answer = is_member(descriptor, read_expression(args.expr))
    print("true" if answer else "false")
    return 0 if answer else 1


def _vector(text: str):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a vector like 2,1 but got {text!r}") from None


def _k0_arguments(parser):
    actions = parser.add_subparsers(dest="action", required=True)
    to_subcat = actions.add_parser("to-subcat", help="subcategory of a subgroup of K0")
    to_subcat.add_argument("--support", type=prime_list, required=True, help="primes of S, e.g. 2,3")
    to_subcat.add_argument("--basis", type=_vector, nargs="*", default=[],
                           help="generating vectors of the subgroup, e.g. 2,1")
    from_subcat = actions.add_parser("from-subcat", help="subgroup of K0 spanned by a subcategory")
    from_subcat.add_argument("--desc", required=True, help="descriptor JSON file, or - for stdin")
    from_subcat.add_argument("--support", type=prime_list, required=True, help="primes of S, e.g. 2,3")
    actions.add_parser("failure-demo", help="two subcategories with the same rank-class image")


@register("k0", "correspondence between subcategories and subgroups of K0", _k0_arguments)
def k0(args) -> int:
    if args.action == "to-subcat":
        descriptor = subgroup_to_subcat(args.support, lattice_from_generators(args.support, args.basis))
        say(args, classification_line(descriptor))
        emit(descriptor_to_json(descriptor))
    elif args.action == "from-subcat":
        lattice = subcat_to_subgroup(descriptor_from_json(load_json(args.desc)), args.support)
        say(args, str(lattice))
        emit(lattice_to_json(lattice))
    else:
        first, second = k0_failure_witness()
        say(args, f"{classification_line(first)} and {classification_line(second)} differ, "
                  f"both with rank-class image {k0_rank_image(first)}Z")
        emit([descriptor_to_json(first), descriptor_to_json(second)])
    return 0
