"""Exact Weyl-closure membership, Riquier bases and formal power-series jets."""

import json

from ._weylclosure import (
    InvalidInput,
    Operator,
    ParseError,
    is_member,
    reduce,
    verify_witness,
)
from . import _weylclosure as _core

__all__ = [
    "InvalidInput",
    "Operator",
    "ParseError",
    "is_member",
    "member",
    "prop1",
    "reduce",
    "riquier",
    "solve",
    "verify_witness",
]


def riquier(system, s=None, field=None):
    """Riquier basis of a system given as system-file text."""
    return json.loads(_core.riquier_json(system, s, field))


def member(system, q=None, cross_check=False, field=None):
    return json.loads(_core.member_json(system, q, cross_check, field))


def solve(system, point=None, init=None, order=None, field=None):
    return json.loads(_core.solve_json(system, point, init, order, field))


def prop1(system, point=None, s=None, field=None):
    return json.loads(_core.prop1_json(system, point, s, field))
