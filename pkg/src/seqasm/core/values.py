"""Domain values.

A value is one of

* ``TRUE`` / ``FALSE`` / ``UNDEF`` -- the logical constants every state carries,
* an ``int`` or exact ``Fraction`` (integer-valued fractions are normalised to ``int``),
* an :class:`Atom` (an opaque string element),
* a :class:`Con` (an element of a freely constructed domain).

Python ``bool`` is deliberately not a value: ``True == 1`` would make the
boolean ``true`` collide with the integer ``1``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class Special(enum.Enum):
    FALSE = "false"
    TRUE = "true"
    UNDEF = "undef"

    def __repr__(self):
        return self.value


TRUE = Special.TRUE
FALSE = Special.FALSE
UNDEF = Special.UNDEF


@dataclass(frozen=True)
class Atom:
    name: str

    def __repr__(self):
        return json.dumps(self.name)


@dataclass(frozen=True)
class Con:
    """A constructor-term element ``name(args...)`` of a free Herbrand domain."""

    name: str
    args: tuple = ()

    def __repr__(self):
        return format_value(self)


Value = Union[Special, int, Fraction, Atom, Con]


def boolean(flag: bool) -> Special:
    return TRUE if flag else FALSE


def is_number(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def norm(v):
    """Collapse integer-valued fractions to ``int`` so equal numbers share one spelling."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    return v


def is_value(v) -> bool:
    if isinstance(v, bool):
        return False
    if isinstance(v, Con):
        return all(is_value(a) for a in v.args)
    return isinstance(v, (Special, int, Fraction, Atom))


def format_value(v) -> str:
    if isinstance(v, Special):
        return v.value
    if isinstance(v, bool):
        raise TypeError("python bool is not a domain value; use TRUE/FALSE")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        v = norm(v)
        if isinstance(v, int):
            return str(v)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, Atom):
        return json.dumps(v.name)
    if isinstance(v, Con):
        if not v.args:
            return "@" + v.name
        return "@" + v.name + "(" + ", ".join(format_value(a) for a in v.args) + ")"
    raise TypeError(f"not a domain value: {v!r}")


_SPECIAL_ORDER = {FALSE: 0, TRUE: 1, UNDEF: 2}


def value_key(v):
    """Total order on values used for canonical output."""
    if isinstance(v, Special):
        return (0, _SPECIAL_ORDER[v])
    if is_number(v):
        return (1, Fraction(v))
    if isinstance(v, Atom):
        return (2, v.name)
    if isinstance(v, Con):
        return (3, v.name, len(v.args), tuple(value_key(a) for a in v.args))
    raise TypeError(f"not a domain value: {v!r}")


def args_key(args):
    return tuple(value_key(a) for a in args)
