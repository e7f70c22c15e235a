"""
Root data, finite Weyl groups and affine Weyl groups W = W0 x| Q.

The affine group is realized as affine transformations of Q (x) R, the real
span of the root lattice Q.  An element is a pair ``(translation, finite)``
acting by ``x -> finite(x) + translation``; the finite part is stored as the
images of the simple roots in simple-root coordinates.  Reflection
hyperplanes are ``<a^v, x> = k`` for roots ``a`` and integers ``k``, and the
special generator s0 is the reflection in ``<b^v, x> = 1`` where ``b`` is the
highest short root.  With this choice the translation subgroup is exactly Q.

Lengths are computed from an inversion count (alcove-separating hyperplanes)
and are checked against breadth-first word length in the test suite.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class DatumError(ValueError):
    """Invalid or unsupported Cartan type / datum specification."""


class NonTermination(RuntimeError):
    """A saturation loop exceeded its step budget."""


# ---------------------------------------------------------------------------
# root data


def _gram_matrix(letter: str, n: int) -> list[list[int]]:
    """Symmetric bilinear form on simple roots, Bourbaki labelling.

    Short roots have squared length 2.
    """
    g = [[0] * n for _ in range(n)]

    def edge(i, j, val):
        g[i][j] = g[j][i] = val

    if letter in "ADE":
        for i in range(n):
            g[i][i] = 2
        if letter == "A":
            for i in range(n - 1):
                edge(i, i + 1, -1)
        elif letter == "D":
            for i in range(n - 2):
                edge(i, i + 1, -1)
            edge(n - 3, n - 1, -1)
        else:
            # 1-3-4-5-6-7-8 with 2 attached to 4
            edge(0, 2, -1)
            edge(1, 3, -1)
            for i in range(2, n - 1):
                edge(i, i + 1, -1)
    elif letter == "B":
        for i in range(n - 1):
            g[i][i] = 4
        g[n - 1][n - 1] = 2
        for i in range(n - 1):
            edge(i, i + 1, -2)
    elif letter == "C":
        for i in range(n - 1):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i in range(n - 2):
            edge(i, i + 1, -1)
        edge(n - 2, n - 1, -2)
    elif letter == "F":
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        edge(0, 1, -2)
        edge(1, 2, -2)
        edge(2, 3, -1)
    elif letter == "G":
        g[0][0], g[1][1] = 2, 6
        edge(0, 1, -3)
    return g


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def _check_type(letter: str, rank: int) -> None:
    if letter in _MIN_RANK:
        if rank < _MIN_RANK[letter]:
            raise DatumError(f"type {letter}{rank} is not a valid irreducible type")
    elif letter in _FIXED_RANKS:
        if rank not in _FIXED_RANKS[letter]:
            raise DatumError(f"type {letter}{rank} is not a valid irreducible type")
    else:
        raise DatumError(f"unsupported Cartan type {letter!r}")


@dataclass(frozen=True)
class RootDatum:
    """Irreducible reduced root system, vectors in simple-root coordinates."""

    cartan_type: str
    rank: int
    affine: bool
    gram: tuple[tuple[int, ...], ...]
    cartan_matrix: tuple[tuple[int, ...], ...]  # A[i][j] = <a_i^v, a_j>
    positive_roots: tuple[Vector, ...]
    coroot_rows: tuple[Vector, ...] = field(repr=False)  # <b^v, x> = row . x
    two_rho: Vector = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.cartan_type}{self.rank}" + ("~" if self.affine else "")

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        n = self.rank
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n) if g[i][j])

    def pairing(self, root: Sequence[int], x: Sequence[int]) -> int:
        """<root^v, x> = 2(root, x)/(root, root); integral for x in Q."""
        num = 2 * self.form(root, x)
        den = self.form(root, root)
        q, r = divmod(num, den)
        if r:
            raise ValueError("non-integral coroot pairing")
        return q

    def simple_root(self, i: int) -> Vector:
        return tuple(int(j == i) for j in range(self.rank))

    @cached_property
    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    @cached_property
    def highest_short_root(self) -> Vector:
        short = min(self.form(r, r) for r in self.positive_roots)
        cands = [r for r in self.positive_roots if self.form(r, r) == short]
        return max(cands, key=lambda r: (sum(r), r))

    def is_simply_laced(self) -> bool:
        return self.cartan_type in "ADE"

    def reflection_cols(self, root: Sequence[int]) -> tuple[Vector, ...]:
        """Images of the simple roots under the reflection in ``root``."""
        cols = []
        for j in range(self.rank):
            e = self.simple_root(j)
            c = self.pairing(root, e)
            cols.append(tuple(e[k] - c * root[k] for k in range(self.rank)))
        return tuple(cols)

    def is_dominant(self, x: Sequence[int]) -> bool:
        return all(self.pairing(self.simple_root(i), x) >= 0 for i in range(self.rank))

    def weight_in_fundamental(self, x: Sequence[int]) -> Vector:
        """Coordinates <a_i^v, x> (Dynkin labels)."""
        return tuple(self.pairing(self.simple_root(i), x) for i in range(self.rank))


def _positive_roots(cartan: list[list[int]]) -> list[Vector]:
    n = len(cartan)
    simple = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        b = queue.popleft()
        for i in range(n):
            c = sum(cartan[i][j] * b[j] for j in range(n))
            if c == 0:
                continue
            nb = tuple(b[k] - c * (k == i) for k in range(n))
            if all(t >= 0 for t in nb) and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return sorted(seen, key=lambda r: (sum(r), r))


_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*(~?)\s*$")


def parse_label(label: str) -> tuple[str, int, bool]:
    """``"A2~"`` -> ("A", 2, True)."""
    m = _LABEL_RE.match(label)
    if not m:
        raise DatumError(f"cannot parse datum label {label!r}")
    return m.group(1).upper(), int(m.group(2)), bool(m.group(3))


def root_datum(cartan_type: str, rank: int, affine: bool = False) -> RootDatum:
    letter = cartan_type.upper()
    _check_type(letter, rank)
    g = _gram_matrix(letter, rank)
    cartan = [[2 * g[i][j] // g[i][i] for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        assert cartan[i][i] == 2
        for j in range(rank):
            if i != j:
                assert cartan[i][j] <= 0
    roots = _positive_roots(cartan)
    norms = {r: sum(r[i] * g[i][j] * r[j] for i in range(rank) for j in range(rank)) for r in roots}
    rows = []
    for r in roots:
        row = []
        for j in range(rank):
            num = 2 * sum(r[i] * g[i][j] for i in range(rank))
            q, rem = divmod(num, norms[r])
            assert not rem
            row.append(q)
        rows.append(tuple(row))
    two_rho = tuple(sum(r[k] for r in roots) for k in range(rank))
    return RootDatum(
        cartan_type=letter,
        rank=rank,
        affine=affine,
        gram=tuple(map(tuple, g)),
        cartan_matrix=tuple(map(tuple, cartan)),
        positive_roots=tuple(roots),
        coroot_rows=tuple(rows),
        two_rho=two_rho,
    )


# ---------------------------------------------------------------------------
# elements


def _apply(cols: tuple[Vector, ...], x: Sequence[int]) -> Vector:
    n = len(cols)
    out = [0] * n
    for j, xj in enumerate(x):
        if xj:
            cj = cols[j]
            for k in range(n):
                out[k] += xj * cj[k]
    return tuple(out)


@dataclass(frozen=True, order=True)
class FiniteElement:
    """Element of W0 given by the images of the simple roots."""

    cols: tuple[Vector, ...]

    @classmethod
    def identity(cls, rank: int) -> FiniteElement:
        return cls(tuple(tuple(int(i == j) for i in range(rank)) for j in range(rank)))

    def apply(self, x: Sequence[int]) -> Vector:
        return _apply(self.cols, x)

    def __mul__(self, other: FiniteElement) -> FiniteElement:
        return FiniteElement(tuple(_apply(self.cols, c) for c in other.cols))

    def is_identity(self) -> bool:
        return all(c[k] == (k == j) for j, c in enumerate(self.cols) for k in range(len(c)))

    def matrix(self) -> list[list[int]]:
        """Row-major matrix acting on column vectors."""
        n = len(self.cols)
        return [[self.cols[j][i] for j in range(n)] for i in range(n)]

    def to_json(self) -> list[list[int]]:
        return self.matrix()

    @classmethod
    def from_json(cls, m: list[list[int]]) -> FiniteElement:
        n = len(m)
        return cls(tuple(tuple(m[i][j] for i in range(n)) for j in range(n)))


@dataclass(frozen=True, order=True)
class AffineElement:
    """The affine map ``x -> finite(x) + translation``, i.e. t_translation * finite."""

    translation: Vector
    finite: FiniteElement

    def __mul__(self, other: AffineElement) -> AffineElement:
        u = self.finite
        moved = u.apply(other.translation)
        t = tuple(a + b for a, b in zip(self.translation, moved))
        return AffineElement(t, u * other.finite)

    def apply(self, x: Sequence) -> tuple:
        y = self.finite.apply(x)
        return tuple(a + b for a, b in zip(y, self.translation))

    def is_translation(self) -> bool:
        return self.finite.is_identity()

    def to_json(self) -> dict:
        return {"t": list(self.translation), "w": self.finite.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> AffineElement:
        return cls(tuple(data["t"]), FiniteElement.from_json(data["w"]))


@dataclass(frozen=True, order=True)
class DominantWeight:
    """Element of Q+ in simple-root coordinates."""

    coords: Vector

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


# ---------------------------------------------------------------------------
# Coxeter groups


class CoxeterGroup:
    """
    Shared algorithms for a Coxeter system (W, S) given by concrete elements.

    Subclasses provide ``generators``, ``identity``, ``mul``, ``length``
    (the Coxeter length), ``key`` and optionally ``weights`` (one positive
    integer per generator; default 1) and ``finite_indices`` (S0).
    """

    generators: tuple
    identity: object
    weights: tuple[int, ...]
    finite_indices: tuple[int, ...] = ()
    names: tuple[str, ...]

    def __init__(self):
        self._bruhat_memo: dict = {}
        self._weight_memo: dict = {}
        self._ideal_memo: dict = {}

    # -- to be overridden ---------------------------------------------------

    def mul(self, a, b):
        return a * b

    def length(self, w) -> int:
        raise NotImplementedError

    def key(self, w):
        return w

    def element_to_json(self, w):
        return w.to_json()

    def element_from_json(self, data):
        raise NotImplementedError

    # -- derived ------------------------------------------------------------

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def sort_key(self, w):
        return (self.length(w), self.key(w))

    def is_left_descent(self, i: int, w) -> bool:
        return self.length(self.mul(self.generators[i], w)) < self.length(w)

    def is_right_descent(self, i: int, w) -> bool:
        return self.length(self.mul(w, self.generators[i])) < self.length(w)

    def left_descents(self, w) -> list[int]:
        return [i for i in range(self.n_generators) if self.is_left_descent(i, w)]

    def right_descents(self, w) -> list[int]:
        return [i for i in range(self.n_generators) if self.is_right_descent(i, w)]

    def reduced_word(self, w) -> list[int]:
        """Lexicographically first reduced word (greedy left descents)."""
        word = []
        cur = w
        budget = self.length(w)
        while budget:
            for i in range(self.n_generators):
                nxt = self.mul(self.generators[i], cur)
                if self.length(nxt) < budget:
                    word.append(i)
                    cur = nxt
                    budget -= 1
                    break
            else:
                raise RuntimeError("no descent found for element of positive length")
        return word

    def from_word(self, word: Iterable[int]):
        w = self.identity
        for i in word:
            w = self.mul(w, self.generators[i])
        return w

    def inverse(self, w):
        return self.from_word(reversed(self.reduced_word(w)))

    def weight(self, w) -> int:
        """The weight function L, additive along reduced words."""
        k = self.key(w)
        if k not in self._weight_memo:
            self._weight_memo[k] = sum(self.weights[i] for i in self.reduced_word(w))
        return self._weight_memo[k]

    def coxeter_matrix(self, cap: int = 50) -> list[list[int]]:
        """Orders of s_i s_j; 0 encodes infinity (no relation within ``cap``)."""
        n = self.n_generators
        m = [[1] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                p = self.mul(self.generators[i], self.generators[j])
                cur = p
                order = 0
                for k in range(1, cap + 1):
                    if cur == self.identity:
                        order = k
                        break
                    cur = self.mul(cur, p)
                m[i][j] = m[j][i] = order
        return m

    def enumerate_to_length(self, bound: int) -> list:
        """All elements of length <= bound, sorted by (length, key)."""
        if bound < 0:
            return []
        found = {self.key(self.identity): self.identity}
        layer = [self.identity]
        for ell in range(1, bound + 1):
            nxt = {}
            for w in layer:
                for s in self.generators:
                    u = self.mul(w, s)
                    k = self.key(u)
                    if k in found or k in nxt:
                        continue
                    if self.length(u) == ell:
                        nxt[k] = u
            found.update(nxt)
            layer = list(nxt.values())
        return sorted(found.values(), key=self.sort_key)

    def bfs_lengths(self, bound: int) -> dict:
        """Word length by breadth-first search over generators (oracle)."""
        dist = {self.key(self.identity): 0}
        layer = [self.identity]
        for ell in range(1, bound + 1):
            nxt = []
            for w in layer:
                for s in self.generators:
                    u = self.mul(w, s)
                    k = self.key(u)
                    if k not in dist:
                        dist[k] = ell
                        nxt.append(u)
            layer = nxt
        return dist

    def bruhat_leq(self, y, w) -> bool:
        """Bruhat order via the descent recursion, memoized."""
        ly, lw = self.length(y), self.length(w)
        if ly > lw:
            return False
        if ly == lw:
            return self.key(y) == self.key(w)
        if ly == 0:
            return True
        memo_key = (self.key(y), self.key(w))
        hit = self._bruhat_memo.get(memo_key)
        if hit is not None:
            return hit
        for i in range(self.n_generators):
            s = self.generators[i]
            sw = self.mul(s, w)
            if self.length(sw) < lw:
                sy = self.mul(s, y)
                lower = sy if self.length(sy) < ly else y
                result = self.bruhat_leq(lower, sw)
                break
        else:
            raise RuntimeError("element of positive length without left descent")
        # plain dict writes are atomic; concurrent callers may at worst recompute
        self._bruhat_memo[memo_key] = result
        return result

    def lower_interval(self, w) -> list:
        """{y : y <= w}, sorted by (length, key)."""
        return sorted(self._ideal(w).values(), key=self.sort_key)

    def _ideal(self, w) -> dict:
        k = self.key(w)
        hit = self._ideal_memo.get(k)
        if hit is not None:
            return hit
        if self.length(w) == 0:
            out = {k: w}
        else:
            i = self.right_descents(w)[0]
            s = self.generators[i]
            ws = self.mul(w, s)
            base = self._ideal(ws)
            out = dict(base)
            for y in base.values():
                ys = self.mul(y, s)
                out.setdefault(self.key(ys), ys)
        self._ideal_memo[k] = out
        return out

    # -- parabolic W0 and double cosets -------------------------------------

    @cached_property
    def finite_subgroup(self) -> list:
        """Elements of W0 = <S0>, sorted by (length, key)."""
        gens = [self.generators[i] for i in self.finite_indices]
        seen = {self.key(self.identity): self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for s in gens:
                u = self.mul(w, s)
                k = self.key(u)
                if k not in seen:
                    seen[k] = u
                    queue.append(u)
        return sorted(seen.values(), key=self.sort_key)

    @cached_property
    def longest_finite(self):
        """M_0, the longest element of W0."""
        return self.finite_subgroup[-1]

    def poincare_finite(self):
        """pi_L = sum over W0 of v^(2 L(e))."""
        from .laurent import LaurentPoly

        terms: dict[int, int] = {}
        for e in self.finite_subgroup:
            d = 2 * self.weight(e)
            terms[d] = terms.get(d, 0) + 1
        return LaurentPoly(terms)

    def is_double_coset_max(self, w) -> bool:
        """|s w| = |w| - 1 = |w s| for all s in S0."""
        return all(self.is_left_descent(i, w) and self.is_right_descent(i, w) for i in self.finite_indices)

    def saturate(self, w, budget: int | None = None):
        """Climb to the maximal element of W0 w W0 by length-increasing steps."""
        if budget is None:
            budget = len(self.finite_subgroup) ** 2 * max(1, self.length(w)) + len(self.finite_subgroup)
        cur = w
        steps = 0
        changed = True
        while changed:
            changed = False
            for i in self.finite_indices:
                s = self.generators[i]
                for cand in (self.mul(s, cur), self.mul(cur, s)):
                    if self.length(cand) > self.length(cur):
                        cur = cand
                        changed = True
                        steps += 1
                        if steps > budget:
                            raise NonTermination(f"saturation exceeded {budget} steps")
        if not self.is_double_coset_max(cur):
            raise AssertionError("saturation ended on a non-maximal element")
        return cur

    def double_coset(self, w) -> list:
        out = {}
        for a in self.finite_subgroup:
            aw = self.mul(a, w)
            for b in self.finite_subgroup:
                u = self.mul(aw, b)
                out.setdefault(self.key(u), u)
        return sorted(out.values(), key=self.sort_key)

    def is_translation(self, w) -> bool:
        return w.is_translation()

    def translation_element(self, coords: Sequence[int]):
        raise NotImplementedError

    def is_dominant_translation(self, t) -> bool:
        """Q+ membership by the length criterion |s t| = |t| + 1, s in S0."""
        lt = self.length(t)
        return all(self.length(self.mul(self.generators[i], t)) == lt + 1 for i in self.finite_indices)

    def dominant_of_double_coset(self, w) -> DominantWeight:
        """The x in Q+ with w in W0 t_x W0."""
        hits = [
            u for u in self.double_coset(w) if self.is_translation(u) and self.is_dominant_translation(u)
        ]
        if len(hits) != 1:
            raise AssertionError(f"double coset contains {len(hits)} dominant translations")
        return DominantWeight(tuple(hits[0].translation))

    def max_dc_rep(self, x: DominantWeight):
        """M_x: the longest element of W0 t_x W0."""
        t = self.translation_element(x.coords)
        if not self.is_dominant_translation(t):
            raise ValueError(f"{x} is not in Q+")
        return self.saturate(t)

    def dominant_weights(self, bound: int) -> list[DominantWeight]:
        """All x in Q+ with length(M_x) <= bound, ordered by (length(M_x), coords)."""
        out = []
        for w in self.enumerate_to_length(bound):
            if self.is_double_coset_max(w):
                x = self.dominant_of_double_coset(w)
                out.append((self.length(w), x))
        out.sort(key=lambda p: (p[0], p[1].coords))
        return [x for _, x in out]


class FiniteWeylGroup(CoxeterGroup):
    """W0 for a root datum, realized by matrices on the root lattice."""

    def __init__(self, datum: RootDatum, weights: Sequence[int] | None = None):
        super().__init__()
        self.datum = datum
        n = datum.rank
        self.identity = FiniteElement.identity(n)
        self.generators = tuple(FiniteElement(datum.reflection_cols(datum.simple_root(i))) for i in range(n))
        self.names = tuple(f"s{i + 1}" for i in range(n))
        self.finite_indices = tuple(range(n))
        self.weights = tuple(weights) if weights is not None else (1,) * n
        self._len_memo: dict = {}

    def length(self, w: FiniteElement) -> int:
        hit = self._len_memo.get(w)
        if hit is None:
            d = self.datum
            image = w.apply(d.two_rho)
            # w^-1 a < 0  iff  (a, w(2 rho)) < 0
            hit = sum(1 for row in d.coroot_rows if sum(r * x for r, x in zip(row, image)) < 0)
            self._len_memo[w] = hit
        return hit

    def key(self, w: FiniteElement):
        return w.cols

    @property
    def label(self) -> str:
        return self.datum.label

    def element_from_json(self, data) -> FiniteElement:
        return FiniteElement.from_json(data)


class AffineWeylGroup(CoxeterGroup):
    """W = W0 x| Q with generators (s0, s1, ..., sn); s0 is the special one."""

    def __init__(self, datum: RootDatum, weights: Sequence[int] | None = None):
        super().__init__()
        if not datum.affine:
            raise DatumError("AffineWeylGroup needs an affine datum")
        self.datum = datum
        n = datum.rank
        zero = (0,) * n
        self.finite = FiniteWeylGroup(datum)
        self.identity = AffineElement(zero, self.finite.identity)
        theta = datum.highest_short_root
        s0 = AffineElement(theta, FiniteElement(datum.reflection_cols(theta)))
        self.generators = (s0,) + tuple(AffineElement(zero, g) for g in self.finite.generators)
        self.names = tuple(f"s{i}" for i in range(n + 1))
        self.finite_indices = tuple(range(1, n + 1))
        self.weights = tuple(weights) if weights is not None else (1,) * (n + 1)
        if len(self.weights) != n + 1 or any(int(c) <= 0 for c in self.weights):
            raise DatumError("weights must be positive, one per generator")
        self._len_memo: dict = {}

    def length(self, w: AffineElement) -> int:
        hit = self._len_memo.get(w)
        if hit is None:
            d = self.datum
            image = w.finite.apply(d.two_rho)
            lam = w.translation
            total = 0
            for row in d.coroot_rows:
                k = sum(r * x for r, x in zip(row, lam))
                if sum(r * x for r, x in zip(row, image)) < 0:
                    k -= 1
                total += abs(k)
            hit = total
            self._len_memo[w] = hit
        return hit

    def key(self, w: AffineElement):
        return (w.translation, w.finite.cols)

    @property
    def label(self) -> str:
        return self.datum.label

    def element_from_json(self, data) -> AffineElement:
        return AffineElement.from_json(data)

    def translation_element(self, coords: Sequence[int]) -> AffineElement:
        return AffineElement(tuple(coords), self.finite.identity)

    def dominant_of_double_coset(self, w: AffineElement) -> DominantWeight:
        # W0 t_l u W0 = W0 t_l W0, whose dominant translation is the dominant
        # conjugate of l; the generic search is kept as a cross-check in tests
        lam = w.translation
        for e in self.finite.finite_subgroup:
            mu = e.apply(lam)
            if self.datum.is_dominant(mu):
                return DominantWeight(mu)
        raise AssertionError("no dominant conjugate found")

    def dominant_weights(self, bound: int) -> list[DominantWeight]:
        out = super().dominant_weights(bound)
        for x in out:
            t = self.translation_element(x.coords)
            if self.is_dominant_translation(t) != self.datum.is_dominant(x.coords):
                raise AssertionError(f"length criterion and coroot dominance disagree at {x}")
        return out


def build_datum(cartan_type: str, rank: int, affine: bool = False, weights: Sequence[int] | None = None):
    """Root datum together with its Coxeter group (affine or finite)."""
    d = root_datum(cartan_type, rank, affine)
    if affine:
        return d, AffineWeylGroup(d, weights)
    return d, FiniteWeylGroup(d, weights)


def group_from_label(label: str, weights: Sequence[int] | None = None):
    letter, rank, affine = parse_label(label)
    return build_datum(letter, rank, affine, weights)[1]

