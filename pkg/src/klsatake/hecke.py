"""
Hecke algebra of a weighted Coxeter system over Z[v, v^-1].

Conventions: T_w T_w' = T_ww' when lengths add, and
(T_s + v^-L(s))(T_s - v^L(s)) = 0.  The Kazhdan-Lusztig element is

    c_w = sum_y v^(L(y) - L(w)) P_{y,w} T_y,

the unique bar-invariant element with leading term T_w and strictly negative
v-degrees elsewhere.  It is built by bar-fixing: with bar(T_z) expanded in
the T-basis, each lower coefficient is the negative-degree part of an
antisymmetric Laurent polynomial computed from the coefficients above it.

All work happens inside a finite window of the group (elements of Coxeter
length <= cutoff).  Leaving the window raises CutoffError instead of
truncating silently.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .laurent import ONE, ZERO, LaurentPoly, poly_sum

log = logging.getLogger(__name__)

FORMAT_VERSION = 1


class CutoffError(RuntimeError):
    """A computation needed an element beyond the length cutoff."""


class DegreeViolation(AssertionError):
    """A solved KL coefficient broke the degree/parity bounds."""


class InvalidWeights(ValueError):
    pass


def xi(k: int) -> LaurentPoly:
    """v^k - v^-k."""
    return LaurentPoly({k: 1, -k: -1})


@dataclass(frozen=True)
class WeightFunction:
    """Positive integer weight per simple reflection."""

    values: tuple[int, ...]

    def validate(self, group) -> None:
        if len(self.values) != group.n_generators:
            raise InvalidWeights(f"expected {group.n_generators} weights, got {len(self.values)}")
        if any(c <= 0 for c in self.values):
            raise InvalidWeights("weights must be positive")
        m = group.coxeter_matrix()
        n = group.n_generators
        for i in range(n):
            for j in range(i + 1, n):
                # s_i, s_j are conjugate iff joined by an odd-order bond
                if m[i][j] % 2 == 1 and self.values[i] != self.values[j]:
                    raise InvalidWeights(
                        f"generators {i} and {j} are conjugate but have weights "
                        f"{self.values[i]} != {self.values[j]}"
                    )

    def of_word(self, word: Iterable[int]) -> int:
        return sum(self.values[i] for i in word)


class HeckeElt:
    """Sparse T-basis vector; coefficients are LaurentPoly, no zero entries."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: HeckeAlgebra, coeffs: Mapping[int, LaurentPoly] | None = None):
        self.alg = alg
        self.coeffs: dict[int, LaurentPoly] = {i: c for i, c in (coeffs or {}).items() if c}

    def __add__(self, other: HeckeElt) -> HeckeElt:
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            n = out.get(i, ZERO) + c
            if n:
                out[i] = n
            else:
                out.pop(i, None)
        return HeckeElt(self.alg, out)

    def __sub__(self, other: HeckeElt) -> HeckeElt:
        return self + other.scale(-1)

    def __neg__(self) -> HeckeElt:
        return self.scale(-1)

    def scale(self, c) -> HeckeElt:
        c = LaurentPoly.coerce(c)
        return HeckeElt(self.alg, {i: p * c for i, p in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.alg.t_mult(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElt) and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def bar(self) -> HeckeElt:
        return self.alg.bar(self)

    def coefficient(self, w) -> LaurentPoly:
        return self.coeffs.get(self.alg.index_of(w), ZERO)

    def items(self):
        """(element, coefficient) in (length, key) order."""
        for i in sorted(self.coeffs):
            yield self.alg.elements[i], self.coeffs[i]

    def support(self) -> list:
        return [w for w, _ in self.items()]

    def at_one(self) -> dict:
        return {self.alg.elements[i]: c.at_one() for i, c in sorted(self.coeffs.items())}

    def __repr__(self) -> str:
        alg = self.alg
        parts = [f"({c})*T[{alg.word_string(i)}]" for i, c in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


class HeckeAlgebra:
    """
    The Hecke algebra of ``group`` restricted to the window of elements of
    length <= ``cutoff``.  ``group`` supplies generators, multiplication,
    Coxeter length and the generator weights.
    """

    def __init__(self, group, cutoff: int, weights: Sequence[int] | None = None):
        self.group = group
        self.cutoff = cutoff
        wf = WeightFunction(tuple(weights) if weights is not None else tuple(group.weights))
        wf.validate(group)
        self.weight_function = wf
        gen_w = wf.values
        self.gen_weights = gen_w
        self.xi = [xi(k) for k in gen_w]

        elems = group.enumerate_to_length(cutoff)
        self.elements = elems
        self.index = {group.key(w): i for i, w in enumerate(elems)}
        n_gen = group.n_generators
        self.lengths = [group.length(w) for w in elems]
        rmul = [[-1] * n_gen for _ in elems]
        lmul = [[-1] * n_gen for _ in elems]
        for i, w in enumerate(elems):
            for s, g in enumerate(group.generators):
                j = self.index.get(group.key(group.mul(w, g)))
                rmul[i][s] = -1 if j is None else j
                j = self.index.get(group.key(group.mul(g, w)))
                lmul[i][s] = -1 if j is None else j
        self.rmul = rmul
        self.lmul = lmul
        # BFS parent: i = parent[i] * s with length going up
        parent = [-1] * len(elems)
        last = [-1] * len(elems)
        weight = [0] * len(elems)
        for i in range(len(elems)):
            for s in range(n_gen):
                j = rmul[i][s]
                if j > i and parent[j] < 0 and self.lengths[j] == self.lengths[i] + 1 and j != 0:
                    parent[j] = i
                    last[j] = s
                    weight[j] = weight[i] + gen_w[s]
        self.parent = parent
        self.last = last
        self.weights = weight
        self.identity_index = 0

        self._bar_T: dict[int, dict[int, LaurentPoly]] = {0: {0: ONE}}
        self._kl: dict[int, dict[int, LaurentPoly]] = {}
        self._ideal: dict[int, frozenset] = {0: frozenset([0])}
        self._r: dict[tuple[int, int, str], LaurentPoly] = {}

    # -- indexing -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, w) -> int:
        i = self.index.get(self.group.key(w))
        if i is None:
            raise CutoffError(f"element of length {self.group.length(w)} is beyond cutoff {self.cutoff}")
        return i

    def word(self, i: int) -> list[int]:
        out = []
        while i:
            out.append(self.last[i])
            i = self.parent[i]
        return out[::-1]

    def word_string(self, i: int) -> str:
        w = self.word(i)
        return "e" if not w else ".".join(self.group.names[s] for s in w)

    def L(self, w) -> int:
        return self.weights[self.index_of(w)]

    def T(self, w) -> HeckeElt:
        return HeckeElt(self, {self.index_of(w): ONE})

    def generator_T(self, s: int) -> HeckeElt:
        return HeckeElt(self, {self.rmul[0][s]: ONE})

    def one(self) -> HeckeElt:
        return HeckeElt(self, {0: ONE})

    def elt(self, coeffs: Mapping) -> HeckeElt:
        """Build from a mapping element -> coefficient."""
        return HeckeElt(self, {self.index_of(w): LaurentPoly.coerce(c) for w, c in coeffs.items()})

    # -- T-basis arithmetic -------------------------------------------------

    def _right_gen(self, vec: Mapping[int, LaurentPoly], s: int) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        rmul = self.rmul
        lengths = self.lengths
        x = self.xi[s]
        for i, c in vec.items():
            j = rmul[i][s]
            if j < 0:
                raise CutoffError(f"T[{self.word_string(i)}]*T[s{s}] leaves the length-{self.cutoff} window")
            prev = out.get(j)
            out[j] = c if prev is None else prev + c
            if lengths[j] < lengths[i]:
                prev = out.get(i)
                add = c * x
                out[i] = add if prev is None else prev + add
        return {i: c for i, c in out.items() if c}

    def _left_gen(self, s: int, vec: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        lmul = self.lmul
        lengths = self.lengths
        x = self.xi[s]
        for i, c in vec.items():
            j = lmul[i][s]
            if j < 0:
                raise CutoffError(f"T[s{s}]*T[{self.word_string(i)}] leaves the length-{self.cutoff} window")
            prev = out.get(j)
            out[j] = c if prev is None else prev + c
            if lengths[j] < lengths[i]:
                prev = out.get(i)
                add = c * x
                out[i] = add if prev is None else prev + add
        return {i: c for i, c in out.items() if c}

    def right_mult_generator(self, a: HeckeElt, s: int) -> HeckeElt:
        return HeckeElt(self, self._right_gen(a.coeffs, s))

    def left_mult_generator(self, s: int, a: HeckeElt) -> HeckeElt:
        return HeckeElt(self, self._left_gen(s, a.coeffs))

    def t_mult(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        """Product in the T-basis, via a * T_u built along BFS parents of u."""
        if not a.coeffs or not b.coeffs:
            return HeckeElt(self)
        cache: dict[int, dict[int, LaurentPoly]] = {0: a.coeffs}
        needed = set()
        for u in b.coeffs:
            while u not in needed and u != 0:
                needed.add(u)
                u = self.parent[u]
        acc: dict[int, list[LaurentPoly]] = {}
        for u in sorted(needed):
            cache[u] = self._right_gen(cache[self.parent[u]], self.last[u])
        for u, cu in b.coeffs.items():
            for i, c in cache[u].items():
                acc.setdefault(i, []).append(c * cu)
        return HeckeElt(self, {i: poly_sum(cs) for i, cs in acc.items()})

    # -- bar involution -----------------------------------------------------

    def bar_T(self, i: int) -> dict[int, LaurentPoly]:
        """bar(T_w) in the T-basis, via T_s^-1 = T_s - (v^L - v^-L) along a reduced word."""
        hit = self._bar_T.get(i)
        if hit is not None:
            return hit
        chain = []
        j = i
        while j not in self._bar_T:
            chain.append(j)
            j = self.parent[j]
        for j in reversed(chain):
            p = self.parent[j]
            s = self.last[j]
            prev = self._bar_T[p]
            out = self._right_gen(prev, s)
            x = self.xi[s]
            for k, c in prev.items():
                n = out.get(k, ZERO) - c * x
                if n:
                    out[k] = n
                else:
                    out.pop(k, None)
            self._bar_T[j] = out
        return self._bar_T[i]

    def bar(self, a: HeckeElt) -> HeckeElt:
        acc: dict[int, list[LaurentPoly]] = {}
        for z, c in a.coeffs.items():
            cb = c.bar()
            for y, r in self.bar_T(z).items():
                acc.setdefault(y, []).append(r * cb)
        return HeckeElt(self, {y: poly_sum(cs) for y, cs in acc.items()})

    # -- Bruhat ideal -------------------------------------------------------

    def ideal(self, i: int) -> frozenset:
        """Indices of {y <= w} by ideal(ws) U ideal(ws).s."""
        hit = self._ideal.get(i)
        if hit is not None:
            return hit
        chain = []
        j = i
        while j not in self._ideal:
            chain.append(j)
            j = self.parent[j]
        for j in reversed(chain):
            p = self.parent[j]
            s = self.last[j]
            base = self._ideal[p]
            self._ideal[j] = base | frozenset(self.rmul[y][s] for y in base)
        return self._ideal[i]

    # -- Kazhdan-Lusztig basis ----------------------------------------------

    def kl_coeffs(self, i: int) -> dict[int, LaurentPoly]:
        """T-coefficients p_y = v^(L(y)-L(w)) P_{y,w} of c_w."""
        hit = self._kl.get(i)
        if hit is not None:
            return hit
        lw = self.weights[i]
        below = sorted(self.ideal(i) - {i}, key=lambda y: (-self.lengths[y], -y))
        p: dict[int, LaurentPoly] = {i: ONE}
        bars: dict[int, LaurentPoly] = {i: ONE}
        bar_rows = {z: self.bar_T(z) for z in self.ideal(i)}
        for y in below:
            terms = []
            for z, pz in bars.items():
                r = bar_rows[z].get(y)
                if r is not None:
                    terms.append(r * pz)
            rhs = poly_sum(terms)
            # p_y - bar(p_y) = rhs, so rhs must be antisymmetric
            if rhs.coeff(0) or rhs + rhs.bar():
                raise DegreeViolation(f"non-antisymmetric bar-fixing residue at y={self.word_string(y)}")
            py = rhs.negative_part()
            if py:
                P = py.shift(lw - self.weights[y])
                if not (P.is_polynomial() and P.in_even_powers() and P.degree() < lw - self.weights[y]):
                    raise DegreeViolation(f"P_{{{self.word_string(y)},{self.word_string(i)}}} = {P}")
                p[y] = py
                bars[y] = py.bar()
        self._kl[i] = p
        return p

    def kl_element(self, w) -> HeckeElt:
        """c_w."""
        return HeckeElt(self, self.kl_coeffs(self.index_of(w)))

    def kl_poly(self, y, w) -> LaurentPoly:
        """P_{y,w;L}."""
        i, j = self.index_of(y), self.index_of(w)
        py = self.kl_coeffs(j).get(i)
        if py is None:
            return ZERO
        return py.shift(self.weights[j] - self.weights[i])

    def kl_table(self, ws: Iterable | None = None) -> dict[tuple[int, int], LaurentPoly]:
        """{(y_index, w_index): P} for all w in ``ws`` (default: whole window)."""
        idx = range(len(self.elements)) if ws is None else [self.index_of(w) for w in ws]
        out = {}
        for j in idx:
            lw = self.weights[j]
            for i, py in self.kl_coeffs(j).items():
                out[(i, j)] = py.shift(lw - self.weights[i])
        return out

    # -- R-polynomials ------------------------------------------------------

    def r_poly(self, y, w, orientation: str = "transposed") -> LaurentPoly:
        """
        R_{y,w;L} by recursion on a left descent s of w:

          sy < y:  R_{y,w} = R_{sy,sw}
          sy > y:  transposed:  v^2L R_{sy,sw} + (v^2L - 1) R_{sy,w}
                   printed:     v^2L R_{sy,w} + (v^2L - 1) R_{sy,sw}
        """
        if orientation not in ("transposed", "printed"):
            raise ValueError(orientation)
        return self._r_idx(self.index_of(y), self.index_of(w), orientation)

    def _r_idx(self, y: int, w: int, orient: str) -> LaurentPoly:
        if y < 0:
            return ZERO
        if self.lengths[y] > self.lengths[w]:
            return ZERO
        if w == 0:
            return ONE if y == 0 else ZERO
        key = (y, w, orient)
        hit = self._r.get(key)
        if hit is not None:
            return hit
        lmul = self.lmul
        lengths = self.lengths
        for s in range(len(self.gen_weights)):
            sw = lmul[w][s]
            if sw >= 0 and lengths[sw] < lengths[w]:
                break
        else:
            raise RuntimeError("no left descent")
        sy = lmul[y][s]
        if sy >= 0 and lengths[sy] < lengths[y]:
            out = self._r_idx(sy, sw, orient)
        else:
            q = LaurentPoly.monomial(2 * self.gen_weights[s])
            if orient == "transposed":
                out = q * self._r_idx(sy, sw, orient) + (q - 1) * self._r_idx(sy, w, orient)
            else:
                out = q * self._r_idx(sy, w, orient) + (q - 1) * self._r_idx(sy, sw, orient)
        self._r[key] = out
        return out

    def r_poly_direct(self, y, w) -> LaurentPoly:
        """
        R_{y,w;L} from T_w T_{w0} = sum_y v^(L(y)-L(w)) R_{y,w} T_{y w0}.

        Finite groups only; w0 must lie inside the window.
        """
        g = self.group
        w0 = g.longest_finite
        if len(g.finite_indices) != g.n_generators:
            raise ValueError("direct R-polynomial expansion needs a finite group")
        prod = self.t_mult(self.T(w), self.T(w0))
        target = g.mul(y, w0)
        c = prod.coefficient(target)
        return c.shift(self.L(w) - self.L(y))

    # -- c-basis expansion and structure constants --------------------------

    def to_c_basis(self, a: HeckeElt, allowed=None) -> dict[int, LaurentPoly]:
        """
        Coefficients of ``a`` in the KL basis by peeling the longest term.

        ``allowed`` (a predicate on indices) restricts which c_u may occur;
        a violating leading term raises AssertionError.
        """
        rem = dict(a.coeffs)
        out: dict[int, LaurentPoly] = {}
        while rem:
            u = max(rem, key=lambda i: (self.lengths[i], i))
            h = rem[u]
            if allowed is not None and not allowed(u):
                raise AssertionError(f"c_{self.word_string(u)} occurs outside the allowed support")
            out[u] = h
            for y, py in self.kl_coeffs(u).items():
                n = rem.get(y, ZERO) - py * h
                if n:
                    rem[y] = n
                else:
                    rem.pop(y, None)
        return out

    def c_product(self, w, w2) -> HeckeElt:
        return self.t_mult(self.kl_element(w), self.kl_element(w2))

    def h_constants(self, w, w2) -> dict:
        """{w'': h_{w,w2,w''}} from the full c-basis expansion of c_w c_w2."""
        exp = self.to_c_basis(self.c_product(w, w2))
        return {self.elements[u]: h for u, h in sorted(exp.items())}

    def finite_indices(self) -> list[int]:
        """Window indices of W0."""
        return [self.index_of(e) for e in self.group.finite_subgroup]

    def poincare(self) -> LaurentPoly:
        """pi_L = sum over e in W0 of v^(2 L(e))."""
        terms: dict[int, int] = {}
        for i in self.finite_indices():
            d = 2 * self.weights[i]
            terms[d] = terms.get(d, 0) + 1
        return LaurentPoly(terms)

    def a_bound(self) -> int:
        """L(M0), the degree bound for h-constants."""
        return self.weights[self.index_of(self.group.longest_finite)]

    def is_double_coset_max(self, i: int) -> bool:
        lengths = self.lengths
        for s in self.group.finite_indices:
            j = self.lmul[i][s]
            if j < 0 or lengths[j] > lengths[i]:
                return False
            j = self.rmul[i][s]
            if j < 0 or lengths[j] > lengths[i]:
                return False
        return True

    def h_constant(self, w, w2, w3) -> LaurentPoly:
        return self.h_constants(w, w2).get(w3, ZERO) if self.group.key(w3) in self.index else ZERO

    def n_constant(self, w, w2, w3) -> int:
        """N_{w,w2,w3}: coefficient of v^L(M0) in h; asserts deg h <= L(M0)."""
        bound = self.a_bound()
        hs = self.h_constants(w, w2)
        for u, h in hs.items():
            if h.degree() > bound:
                raise DegreeViolation(f"deg h = {h.degree()} exceeds L(M0) = {bound}")
        return hs.get(w3, ZERO).coeff(bound)

    # -- persistence --------------------------------------------------------

    def header(self) -> dict:
        return {
            "datum": self.group.label,
            "weights": list(self.gen_weights),
            "cutoff": self.cutoff,
            "format_version": FORMAT_VERSION,
        }


def header_hash(header: Mapping) -> str:
    blob = json.dumps(header, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def default_cache_dir() -> Path:
    env = os.environ.get("KLSATAKE_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "klsatake"


class KLTable:
    """
    Persisted table of P_{y,w;L} for one HeckeAlgebra window.

    File layout: {"header": {...}, "entries": [{"y": .., "w": .., "P": ..}, ...]}
    with entries in (w, y) canonical order.  Files are named by a content
    hash of the header, so a changed datum/weights/cutoff never hits a stale
    file.
    """

    def __init__(self, alg: HeckeAlgebra):
        self.alg = alg

    @property
    def header(self) -> dict:
        return self.alg.header()

    def path_in(self, cache_dir: Path | str) -> Path:
        return Path(cache_dir) / f"kl-{header_hash(self.header)}.json"

    def compute(self, ws: Iterable | None = None) -> dict[tuple[int, int], LaurentPoly]:
        return self.alg.kl_table(ws)

    def dumps(self, ws: Iterable | None = None) -> str:
        alg = self.alg
        g = alg.group
        table = self.compute(ws)
        entries = []
        for (i, j), P in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            entries.append(
                {"y": g.element_to_json(alg.elements[i]), "w": g.element_to_json(alg.elements[j]), "P": P.to_json()}
            )
        return json.dumps({"header": self.header, "entries": entries}, separators=(",", ":")) + "\n"

    def save(self, cache_dir: Path | str, ws: Iterable | None = None) -> tuple[Path, bool]:
        """Write the table unless a file for this header exists; returns (path, computed)."""
        path = self.path_in(cache_dir)
        if path.exists():
            data = json.loads(path.read_text())
            if data.get("header") == self.header:
                log.info("KL cache hit %s", path)
                self.load_into(data)
                return path, False
        path.parent.mkdir(parents=True, exist_ok=True)
        text = self.dumps(ws)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text)
        tmp.replace(path)
        log.info("KL table written to %s", path)
        return path, True

    def load_into(self, data: Mapping) -> int:
        """Seed the algebra's KL memo from a parsed file; returns #elements seeded."""
        alg = self.alg
        g = alg.group
        if data["header"] != self.header:
            raise ValueError("KL table header mismatch")
        grouped: dict[int, dict[int, LaurentPoly]] = {}
        for e in data["entries"]:
            i = alg.index_of(g.element_from_json(e["y"]))
            j = alg.index_of(g.element_from_json(e["w"]))
            P = LaurentPoly.from_json(e["P"])
            grouped.setdefault(j, {})[i] = P.shift(alg.weights[i] - alg.weights[j])
        for j, coeffs in grouped.items():
            alg._kl.setdefault(j, coeffs)
        return len(grouped)
