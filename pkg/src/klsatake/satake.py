"""
Spherical structure constants and the ring J_*.

For x in Q+ let M_x be the longest element of W0 t_x W0.  The product
c_{M_x} c_{M_y} expands in the KL basis only over elements M_z; its
coefficients rt(x,y,z) are divisible by v^-L(M0) pi_L, and the quotients

    r(x,y,z) = rt(x,y,z) / (v^-L(M0) pi_L)

are integers equal to the leading coefficients N_{M_x,M_y,M_z} (the J_*
structure constants).  Every one of these claims is asserted while
computing, never assumed.  The normalized spherical element
v^L(M0) pi_L^-1 c_{M_x} is never formed; only its structure constants are.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .hecke import DegreeViolation, HeckeAlgebra, HeckeElt
from .laurent import InexactDivision, LaurentPoly, exact_divide
from .weyl import DominantWeight


class SatakeAssertion(AssertionError):
    """A structural identity failed; carries the offending triple."""

    def __init__(self, msg: str, triple=None):
        super().__init__(msg)
        self.triple = triple


@dataclass
class SphericalConstantTable:
    """r(x,y,z) for x, y in ``weights``; ``rtilde`` keeps the undivided polynomials."""

    datum: str
    L: tuple[int, ...]
    weights: list[DominantWeight]
    entries: dict[tuple[DominantWeight, DominantWeight, DominantWeight], int] = field(default_factory=dict)
    rtilde: dict[tuple[DominantWeight, DominantWeight, DominantWeight], LaurentPoly] = field(default_factory=dict)

    def row(self, x: DominantWeight, y: DominantWeight) -> dict[DominantWeight, int]:
        return {z: r for (a, b, z), r in self.entries.items() if a == x and b == y}

    def sorted_entries(self):
        return sorted(self.entries.items(), key=lambda kv: tuple(w.coords for w in kv[0]))

    def to_json(self) -> dict:
        return {
            "L": list(self.L),
            "datum": self.datum,
            "entries": [
                {"x": list(x.coords), "y": list(y.coords), "z": list(z.coords), "r": r}
                for (x, y, z), r in self.sorted_entries()
            ],
        }

    def dumps(self, extra: Mapping | None = None) -> str:
        data = self.to_json()
        if extra:
            data.update(extra)
        return json.dumps(data, indent=1, sort_keys=True) + "\n"

    def text(self) -> str:
        """Aligned table: one row per (x, y), products written as sums of [z]."""
        rows = []
        for x in self.weights:
            for y in self.weights:
                terms = [(z, r) for z, r in sorted(self.row(x, y).items(), key=lambda kv: kv[0].coords)]
                rhs = " + ".join(f"{r}*[{z}]" if r != 1 else f"[{z}]" for z, r in terms) or "0"
                rows.append((f"[{x}]", f"[{y}]", rhs))
        wa = max((len(a) for a, _, _ in rows), default=0)
        wb = max((len(b) for _, b, _ in rows), default=0)
        head = f"datum {self.datum}  L = {list(self.L)}"
        return "\n".join([head] + [f"{a:>{wa}} * {b:<{wb}} = {c}" for a, b, c in rows]) + "\n"


class SatakeComputer:
    """
    Structure constants of the spherical algebra for one weighted affine group.

    ``bound`` limits the factors: x ranges over Q+ with length(M_x) <= bound.
    x = 0 is always included, so bounds below length(M0) give the 1x1 table.
    The Hecke window is sized to 2*bound so every product fits.
    """

    def __init__(self, group, bound: int, cutoff: int | None = None):
        self.group = group
        bound = max(bound, group.length(group.longest_finite))
        self.bound = bound
        self.xs = group.dominant_weights(bound)
        self.M = {x: group.max_dc_rep(x) for x in self.xs}
        need = 2 * max(group.length(m) for m in self.M.values())
        self.alg = HeckeAlgebra(group, cutoff if cutoff is not None else need)
        self.LM0 = self.alg.a_bound()
        self.pi = self.alg.poincare()
        self.divisor = self.pi.shift(-self.LM0)  # v^-L(M0) pi_L
        self._dom_cache: dict[int, DominantWeight] = {}

    def M_of(self, z: DominantWeight):
        m = self.M.get(z)
        if m is None:
            m = self.M[z] = self.group.max_dc_rep(z)
        return m

    def dominant_of(self, i: int) -> DominantWeight:
        hit = self._dom_cache.get(i)
        if hit is None:
            hit = self.group.dominant_of_double_coset(self.alg.elements[i])
            self._dom_cache[i] = hit
        return hit

    def spherical_product(self, x: DominantWeight, y: DominantWeight) -> HeckeElt:
        return self.alg.c_product(self.M[x], self.M[y])

    def rtilde(self, x: DominantWeight, y: DominantWeight) -> dict[DominantWeight, LaurentPoly]:
        """Coefficients of c_{M_x} c_{M_y} on the c_{M_z}."""
        alg = self.alg
        prod = self.spherical_product(x, y)
        try:
            exp = alg.to_c_basis(prod, allowed=alg.is_double_coset_max)
        except AssertionError as exc:
            raise SatakeAssertion(f"product of M_{x} and M_{y}: {exc}", (x, y, None)) from exc
        out = {}
        for u, h in exp.items():
            z = self.dominant_of(u)
            if alg.elements[u] != self.M_of(z):
                raise SatakeAssertion(f"c_u with u != M_{z}", (x, y, z))
            out[z] = h
        return out

    def constants(self, x: DominantWeight, y: DominantWeight) -> tuple[dict, dict]:
        """(r, rtilde) for one ordered pair, with every identity asserted."""
        rt = self.rtilde(x, y)
        lx = self.group.length(self.M[x])
        ly = self.group.length(self.M[y])
        r = {}
        for z, h in rt.items():
            triple = (x, y, z)
            if self.group.length(self.M_of(z)) > lx + ly:
                raise SatakeAssertion("z outside the candidate set", triple)
            if h.degree() > self.LM0:
                raise DegreeViolation(f"deg h_{{M_{x},M_{y},M_{z}}} = {h.degree()} > L(M0) = {self.LM0}")
            if not h.is_bar_invariant():
                raise SatakeAssertion("h-constant is not bar-invariant", triple)
            try:
                q = exact_divide(h, self.divisor)
            except InexactDivision as exc:
                raise SatakeAssertion(f"rtilde not divisible by pi_L: {h}", triple) from exc
            if not q.is_constant() or not q.is_bar_invariant():
                raise SatakeAssertion(f"r = {q} is not an integer", triple)
            val = q.constant()
            n = h.coeff(self.LM0)
            if n != val:
                raise SatakeAssertion(f"r = {val} but N = {n}", triple)
            r[z] = val
        return r, rt

    def satake_constants(self, x: DominantWeight, y: DominantWeight) -> dict[DominantWeight, int]:
        return self.constants(x, y)[0]

    def n_constants(self, x: DominantWeight, y: DominantWeight) -> dict[DominantWeight, int]:
        """N_{M_x,M_y,M_z}: the v^L(M0) coefficient of the full h-constant."""
        hs = self.alg.h_constants(self.M[x], self.M[y])
        out = {}
        for u, h in hs.items():
            if h.degree() > self.LM0:
                raise DegreeViolation(f"deg h = {h.degree()} > L(M0)")
            n = h.coeff(self.LM0)
            if n:
                out[self.group.dominant_of_double_coset(u)] = n
        return out

    def table(self, pairs: Sequence[tuple] | None = None) -> SphericalConstantTable:
        tab = SphericalConstantTable(self.group.label, tuple(self.alg.gen_weights), list(self.xs))
        if pairs is None:
            pairs = list(itertools.product(self.xs, repeat=2))
        for x, y in pairs:
            r, rt = self.constants(x, y)
            for z, val in r.items():
                if val:
                    tab.entries[(x, y, z)] = val
                tab.rtilde[(x, y, z)] = rt[z]
        return tab

    # -- specialization at v = 1 --------------------------------------------

    def xi_spherical(self, x: DominantWeight) -> GroupAlgebraElt:
        """xi(v^L(M0) pi_L^-1 c_{M_x}) = xi(c_{M_x}) / |W0|."""
        a = xi_specialize(self.alg.kl_element(self.M[x]))
        return a.scale(Fraction(1, len(self.group.finite_subgroup)))


def j_ring_table(comp: SatakeComputer, bound: int | None = None) -> SphericalConstantTable:
    """
    Multiplication table of J_* on tau_{M_x}, length(M_x) <= bound, built
    from leading coefficients; asserts the unit row/column and commutativity.
    """
    xs = comp.xs if bound is None else [x for x in comp.xs if comp.group.length(comp.M[x]) <= bound]
    tab = SphericalConstantTable(comp.group.label, tuple(comp.alg.gen_weights), list(xs))
    for x, y in itertools.product(xs, repeat=2):
        for z, n in comp.n_constants(x, y).items():
            tab.entries[(x, y, z)] = n
    zero = xs[0]
    for x in xs:
        if tab.row(zero, x) != {x: 1} or tab.row(x, zero) != {x: 1}:
            raise SatakeAssertion(f"tau_(M_0) is not a unit at {x}", (zero, x, None))
        for y in xs:
            if tab.row(x, y) != tab.row(y, x):
                raise SatakeAssertion("J_* is not commutative", (x, y, None))
    return tab


def associativity_defects(tab: SphericalConstantTable) -> tuple[int, list]:
    """
    Check (ab)c = a(bc) on basis triples whose intermediate products stay
    inside the table.  Returns (#triples checked, list of failing triples).
    """
    xs = set(tab.weights)
    checked = 0
    bad = []
    for a, b, c in itertools.product(tab.weights, repeat=3):
        ab = tab.row(a, b)
        bc = tab.row(b, c)
        if not set(ab) <= xs or not set(bc) <= xs:
            continue
        left: dict = {}
        for z, m in ab.items():
            for u, n in tab.row(z, c).items():
                left[u] = left.get(u, 0) + m * n
        right: dict = {}
        for z, m in bc.items():
            for u, n in tab.row(a, z).items():
                right[u] = right.get(u, 0) + m * n
        checked += 1
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            bad.append((a, b, c))
    return checked, bad


# ---------------------------------------------------------------------------
# group algebra and xi


class GroupAlgebraElt:
    """Finitely supported rational combination of group elements."""

    def __init__(self, group, coeffs: Mapping | None = None, cutoff: int | None = None):
        self.group = group
        self.coeffs = {}
        self._elts = {}
        for w, c in (coeffs or {}).items():
            if c:
                k = group.key(w)
                self.coeffs[k] = self.coeffs.get(k, 0) + Fraction(c)
                self._elts[k] = w
        self.coeffs = {k: c for k, c in self.coeffs.items() if c}
        # support known only up to this length, or None when exact
        self.cutoff = cutoff

    def __getitem__(self, w) -> Fraction:
        return self.coeffs.get(self.group.key(w), Fraction(0))

    def items(self):
        for k in sorted(self.coeffs, key=lambda k: self.group.sort_key(self._elts[k])):
            yield self._elts[k], self.coeffs[k]

    def scale(self, c) -> GroupAlgebraElt:
        return GroupAlgebraElt(self.group, {w: c * a for w, a in self.items()}, self.cutoff)

    def __add__(self, other: GroupAlgebraElt) -> GroupAlgebraElt:
        out = GroupAlgebraElt(self.group)
        out._elts = {**self._elts, **other._elts}
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc[k] = acc.get(k, 0) + c
        out.coeffs = {k: c for k, c in acc.items() if c}
        return out

    def __mul__(self, other: GroupAlgebraElt) -> GroupAlgebraElt:
        g = self.group
        acc: dict = {}
        elts: dict = {}
        for a, ca in self.items():
            for b, cb in other.items():
                ab = g.mul(a, b)
                k = g.key(ab)
                acc[k] = acc.get(k, 0) + ca * cb
                elts[k] = ab
        return GroupAlgebraElt(g, {elts[k]: c for k, c in acc.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebraElt) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"GroupAlgebraElt({len(self.coeffs)} terms)"


def xi_specialize(a: HeckeElt) -> GroupAlgebraElt:
    """Evaluate every T-coefficient at v = 1."""
    alg = a.alg
    return GroupAlgebraElt(alg.group, {alg.elements[i]: c.at_one() for i, c in a.coeffs.items()})


def random_hecke_element(alg: HeckeAlgebra, rng: random.Random, max_len: int, terms: int = 3) -> HeckeElt:
    pool = [i for i, l in enumerate(alg.lengths) if l <= max_len]
    coeffs = {}
    for _ in range(terms):
        i = rng.choice(pool)
        coeffs[i] = LaurentPoly({rng.randint(-3, 3): rng.randint(-4, 4), rng.randint(-3, 3): rng.randint(-4, 4)})
    return HeckeElt(alg, coeffs)
