"""
Characters of the adjoint group: the brute-force side of every cross-check.

Weights live in the root lattice Q (simple-root coordinates), so only
representations whose highest weight is in Q occur.  Nothing here touches
the Hecke algebra.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Sequence

from .weyl import RootDatum, Vector

CharacterVector = dict  # Vector -> positive multiplicity


class NegativeResidue(ArithmeticError):
    """Character peeling produced a negative multiplicity."""


def _add(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _require_dominant(datum: RootDatum, x: Sequence[int]) -> None:
    if not datum.is_dominant(x):
        raise ValueError(f"{tuple(x)} is not dominant")


def weyl_dim(datum: RootDatum, x: Sequence[int]) -> int:
    """Weyl dimension formula: prod over a > 0 of (x + rho, a) / (rho, a)."""
    _require_dominant(datum, x)
    num = Fraction(1)
    rho2 = datum.two_rho
    twice = tuple(2 * c for c in x)
    for a in datum.positive_roots:
        num *= Fraction(datum.form(_add(twice, rho2), a), datum.form(rho2, a))
    if num.denominator != 1:
        raise ArithmeticError("non-integral Weyl dimension")
    return int(num)


def dominant_conjugate(datum: RootDatum, x: Sequence[int]) -> Vector:
    """Reflect by simple reflections until dominant."""
    x = tuple(x)
    n = datum.rank
    while True:
        for i in range(n):
            c = datum.pairing(datum.simple_root(i), x)
            if c < 0:
                x = tuple(x[k] - c * (k == i) for k in range(n))
                break
        else:
            return x


def weight_multiplicities(datum: RootDatum, x: Sequence[int]) -> CharacterVector:
    """
    Freudenthal's recursion from the highest weight downward.

    m(mu) * ((x+rho, x+rho) - (mu+rho, mu+rho)) =
        2 * sum_{a > 0} sum_{k >= 1} m(mu + k a) (mu + k a, a)
    """
    _require_dominant(datum, x)
    x = tuple(x)
    n = datum.rank
    form = datum.form
    rho2 = datum.two_rho
    roots = datum.positive_roots
    norm_top = form(x, x) + form(x, rho2)

    mult: dict[Vector, int] = {x: 1}
    layer = [x]
    while layer:
        cands = set()
        for mu in layer:
            for i in range(n):
                cands.add(tuple(mu[k] - (k == i) for k in range(n)))
        nxt = []
        for mu in sorted(cands):
            if mu in mult:
                continue
            den = norm_top - form(mu, mu) - form(mu, rho2)
            if den <= 0:
                continue
            total = 0
            for a in roots:
                nu = _add(mu, a)
                while nu in mult:
                    total += mult[nu] * form(nu, a)
                    nu = _add(nu, a)
            total *= 2
            if total == 0:
                continue
            m, r = divmod(total, den)
            if r:
                raise ArithmeticError(f"Freudenthal produced a fraction at {mu}")
            if m:
                mult[mu] = m
                nxt.append(mu)
        layer = nxt
    dim = weyl_dim(datum, x)
    if sum(mult.values()) != dim:
        raise ArithmeticError(f"Freudenthal total {sum(mult.values())} != Weyl dimension {dim}")
    return mult


def multiply_characters(a: Mapping[Vector, int], b: Mapping[Vector, int]) -> CharacterVector:
    out: dict[Vector, int] = {}
    for mu, m in a.items():
        for nu, k in b.items():
            w = _add(mu, nu)
            out[w] = out.get(w, 0) + m * k
    return {w: c for w, c in out.items() if c}


def tensor_multiplicities(datum: RootDatum, x: Sequence[int], y: Sequence[int]) -> dict[Vector, int]:
    """(V_z : V_x (x) V_y) by repeatedly peeling the highest dominant weight."""
    x, y = tuple(x), tuple(y)
    rest = multiply_characters(weight_multiplicities(datum, x), weight_multiplicities(datum, y))
    out: dict[Vector, int] = {}
    while rest:
        dom = [w for w in rest if datum.is_dominant(w)]
        if not dom:
            raise NegativeResidue("residual character has no dominant weight")
        z = max(dom, key=lambda w: (sum(w), w))
        m = rest[z]
        if m < 0:
            raise NegativeResidue(f"multiplicity {m} at {z}")
        out[z] = m
        for w, k in weight_multiplicities(datum, z).items():
            c = rest.get(w, 0) - m * k
            if c < 0:
                raise NegativeResidue(f"negative residue {c} at {w} after removing {z}")
            if c:
                rest[w] = c
            else:
                rest.pop(w, None)
    total = sum(m * weyl_dim(datum, z) for z, m in out.items())
    if total != weyl_dim(datum, x) * weyl_dim(datum, y):
        raise ArithmeticError("tensor dimension checksum failed")
    return dict(sorted(out.items()))


def sl2_clebsch_gordan(a: int, b: int) -> dict[int, int]:
    """V(a) (x) V(b) = sum of V(c), c = |a-b|, |a-b|+2, ..., a+b."""
    if a < 0 or b < 0:
        raise ValueError("highest weights must be nonnegative")
    return {c: 1 for c in range(abs(a - b), a + b + 1, 2)}


def character_to_json(ch: Mapping[Vector, int]) -> str:
    return json.dumps({",".join(map(str, w)): m for w, m in sorted(ch.items())})


def character_from_json(text: str) -> CharacterVector:
    return {tuple(int(t) for t in k.split(",")): int(v) for k, v in json.loads(text).items()}


def is_w_invariant(datum: RootDatum, ch: Mapping[Vector, int]) -> bool:
    n = datum.rank
    for w, m in ch.items():
        for i in range(n):
            c = datum.pairing(datum.simple_root(i), w)
            sw = tuple(w[k] - c * (k == i) for k in range(n))
            if ch.get(sw, 0) != m:
                return False
    return True
