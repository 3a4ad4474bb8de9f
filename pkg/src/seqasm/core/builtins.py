"""Named built-in operations for static symbols.

A built-in is looked up by name and instantiated with a tuple of value
parameters (``poly(-2, 0, 1)`` is x**2 - 2).  Every operation returns
``UNDEF`` on arguments outside its domain of definition, including
ill-typed ones; the evaluator turns that into a hang for strictly-partial
symbols.  Callers never see ``UNDEF`` arguments: evaluation is strict.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .values import FALSE, TRUE, UNDEF, Atom, Con, boolean, is_number, norm

_REGISTRY: dict[str, Callable] = {}


def register(name: str, factory: Callable | None = None):
    """Register ``factory(params, symbol_name) -> callable``.

    Usable as a decorator.  Re-registering a name replaces it.
    """
    def deco(f):
        _REGISTRY[name] = f
        return f
    return deco(factory) if factory is not None else deco


def register_function(name: str, fn: Callable):
    """Register a parameterless operation given directly as a callable."""
    _REGISTRY[name] = lambda params, symbol: fn


def resolve(op: str, params: tuple, symbol: str) -> Callable:
    try:
        factory = _REGISTRY[op]
    except KeyError:
        raise KeyError(f"unknown built-in operation {op!r}") from None
    return factory(params, symbol)


def known(op: str) -> bool:
    return op in _REGISTRY


def _numeric(fn):
    def wrapped(*args):
        if not all(is_number(a) for a in args):
            return UNDEF
        return fn(*args)
    return wrapped


def _simple(name, fn):
    op = _numeric(fn)
    _REGISTRY[name] = lambda params, symbol: op


_simple("add", lambda a, b: norm(a + b))
_simple("sub", lambda a, b: norm(a - b))
_simple("mul", lambda a, b: norm(a * b))
_simple("neg", lambda a: norm(-a))
_simple("abs", lambda a: norm(abs(a)))
_simple("sgn", lambda a: (a > 0) - (a < 0))
_simple("div", lambda a, b: UNDEF if b == 0 else norm(Fraction(a) / Fraction(b)))
_simple("gt", lambda a, b: boolean(a > b))
_simple("lt", lambda a, b: boolean(a < b))
_simple("ge", lambda a, b: boolean(a >= b))
_simple("le", lambda a, b: boolean(a <= b))


@register("zigzag")
def _zigzag(params, symbol):
    """The integer enumeration 0, -1, 1, -2, 2, ...: n >= 0 goes to -n-1, -n to n."""
    def op(a):
        if not is_number(a) or not isinstance(norm(a), int):
            return UNDEF
        return -a - 1 if a >= 0 else -a
    return op


@register("poly")
def _poly(params, symbol):
    """Polynomial with the given coefficients, constant term first."""
    coeffs = tuple(Fraction(c) for c in params)

    def op(x):
        if not is_number(x):
            return UNDEF
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return norm(acc)
    return op


@register("append")
def _append(params, symbol):
    (suffix,) = params
    text = suffix.name if isinstance(suffix, Atom) else str(suffix)

    def op(s):
        if not isinstance(s, Atom):
            return UNDEF
        return Atom(s.name + text)
    return op


@register("construct")
def _construct(params, symbol):
    """Free constructor: the symbol applied to its arguments is a fresh element."""
    def op(*args):
        return Con(symbol, tuple(args))
    return op


@register("const")
def _const(params, symbol):
    (value,) = params
    return lambda *args: value


__all__ = ["register", "register_function", "resolve", "known", "TRUE", "FALSE", "UNDEF"]
