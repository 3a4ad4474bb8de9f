"""Isomorphic copies of states.

Bijections are given on a finite set of domain elements and extended to a
permutation with finite support, so they are bijections of the whole
domain.  Booleans and ``undef`` are never moved.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping

from .state import Builtin, State, Table, Transported, Update, Location
from .values import Atom, Con, Special, format_value, value_key


class Bijection:
    def __init__(self, mapping: Mapping | None = None):
        mapping = dict(mapping or {})
        for a, b in mapping.items():
            if (isinstance(a, Special) or isinstance(b, Special)) and a != b:
                raise ValueError("booleans and undef are fixed by every isomorphism")
        mapping = {a: b for a, b in mapping.items() if a != b}
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("map is not injective, so not a bijection")
        # close the partial map into a permutation: images that are not themselves
        # moved are sent back onto the elements that lost their preimage
        keys, vals = set(mapping), set(mapping.values())
        spare = sorted(vals - keys, key=value_key)
        holes = sorted(keys - vals, key=value_key)
        forward = dict(mapping)
        forward.update(zip(spare, holes))
        self.forward = forward
        self.backward = {b: a for a, b in forward.items()}

    def __call__(self, v):
        return self.forward.get(v, v)

    def inverse(self, v):
        return self.backward.get(v, v)

    @property
    def support(self) -> set:
        return set(self.forward)

    def inverted(self) -> Bijection:
        b = Bijection()
        b.forward, b.backward = dict(self.backward), dict(self.forward)
        return b

    def then(self, other: Bijection) -> Bijection:
        """``other`` after ``self``."""
        out = Bijection()
        fwd = {}
        for v in self.support | other.support:
            w = other(self(v))
            if w != v:
                fwd[v] = w
        out.forward = fwd
        out.backward = {b: a for a, b in fwd.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, Bijection) and self.forward == other.forward

    def __hash__(self):
        return hash(frozenset(self.forward.items()))

    def __repr__(self):
        pairs = sorted(self.forward.items(), key=lambda kv: value_key(kv[0]))
        return "Bijection({" + ", ".join(f"{format_value(a)}: {format_value(b)}" for a, b in pairs) + "})"


def apply_isomorphism(state: State, z: Bijection) -> State:
    """The copy of ``state`` along ``z``: tables relabelled, built-ins transported."""
    for v in z.support:
        if not state.domain.contains(v):
            raise ValueError(f"{format_value(v)} is not an element of the state's domain")
    interp = {}
    for name, it in state.interp.items():
        if isinstance(it, Table):
            interp[name] = Table({tuple(z(a) for a in k): z(v) for k, v in it.entries.items()}, z(it.default))
        else:
            interp[name] = Transported(it, z)
    literal_map = z if state.literal_map is None else state.literal_map.then(z)
    return State(state.vocabulary, state.domain, interp, literal_map)


def transport_update(u: Update, z: Bijection) -> Update:
    return Update(Location(u.location.symbol, tuple(z(a) for a in u.location.args)), z(u.value))


def transport_updates(updates: Iterable[Update], z: Bijection) -> frozenset:
    return frozenset(transport_update(u, z) for u in updates)


def active_values(state: State) -> set:
    """Non-logical elements mentioned by the state's tables and built-in parameters."""
    out = set()
    for it in state.interp.values():
        if isinstance(it, Table):
            for k, v in it.entries.items():
                out.update(k)
                out.add(v)
            out.add(it.default)
        elif isinstance(it, Builtin):
            out.update(it.params)
    return {v for v in out if not isinstance(v, Special)}


def random_bijection(rng: random.Random, values: Iterable, domain) -> Bijection:
    """Send each of ``values`` to a random element of ``domain``, injectively."""
    values = sorted(set(v for v in values if not isinstance(v, Special)), key=value_key)
    kind = domain.kind
    if kind in ("finite", "constructed"):
        if kind == "finite":
            pool = sorted(domain.elements, key=value_key)
        else:
            pool = list(values)
        image = rng.sample(pool, len(pool))
        return Bijection(dict(zip(pool, image)))
    used = set()
    mapping = {}
    for v in values:
        while True:
            if kind == "integers":
                w = rng.randint(-10**6, 10**6)
            elif kind == "rationals":
                w = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 97))
                w = int(w) if w.denominator == 1 else w
            else:
                w = Atom("".join(rng.choice("abcdefgh") for _ in range(8)))
            if w not in used:
                break
        used.add(w)
        mapping[v] = w
    return Bijection(mapping)


__all__ = ["Bijection", "apply_isomorphism", "transport_update", "transport_updates",
           "active_values", "random_bijection", "Con"]
