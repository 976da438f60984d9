# commands/__init__.py
"""
Command Registry

Every module in this package registers its verbs with the ``register``
decorator; main.py discovers the modules, builds one subcommand per registered
verb and dispatches to it. Shared helpers for reading module expressions,
bounds flags and printing live here too.
"""

import argparse
import importlib
import pkgutil
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List

from models.fgmodule import FGModule, parse_module
from models.universe import UniverseBounds
from services.export import dump_json
from state import settings


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    configure: Callable[[argparse.ArgumentParser], None]
    run: Callable[[argparse.Namespace], int]


REGISTRY: Dict[str, Command] = {}


def register(name: str, help: str, configure: Callable[[argparse.ArgumentParser], None]):
    """Register the decorated function as the handler of verb ``name``."""
    def decorator(run: Callable[[argparse.Namespace], int]):
        REGISTRY[name] = Command(name, help, configure, run)
        return run
    return decorator


def load_commands() -> Dict[str, Command]:
    """Import every module of the package so its verbs register themselves."""
    for module in pkgutil.iter_modules(__path__):
        importlib.import_module(f"{__name__}.{module.name}")
    return REGISTRY


# Shared helpers

def read_expression(text: str) -> FGModule:
    """Parse an inline expression, or the contents of a file given as @FILE."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as handle:
            text = handle.read().strip()
    return parse_module(text, max_modulus=settings.data["max_modulus"])


def read_expressions(texts: List[str]) -> List[FGModule]:
    return [read_expression(t) for t in texts]


def prime_list(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected primes like 2,3 but got {text!r}") from None


def add_bounds_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--primes", type=prime_list, help="universe primes, e.g. 2,3")
    parser.add_argument("--rank", type=int, help="largest free rank")
    parser.add_argument("--length", type=int, help="largest length per prime")
    parser.add_argument("--max-order", type=int, help="largest group enumerated subgroup by subgroup")
    parser.add_argument("--working-length", type=int, help="per-prime length of the fixpoint universe")


def bounds_from(args: argparse.Namespace) -> UniverseBounds:
    settings.update(primes=args.primes, max_rank=args.rank, max_length=args.length,
                    max_order=args.max_order, working_length=args.working_length)
    return settings.bounds()


def say(args: argparse.Namespace, line: str) -> None:
    """Human-readable commentary on stderr, suppressed by --quiet."""
    if not args.quiet:
        print(line, file=sys.stderr)


def emit(document) -> None:
    print(dump_json(document))
