"""
Folding a simply-laced Coxeter system by a diagram automorphism.

For sigma permuting the generators, the fixed subgroup 'W is again a Coxeter
group, generated by the longest elements s_O of the parabolic subgroups
spanned by the sigma-orbits O.  Restricting the length function of W to 'W
gives a weight function L with L(s_O) = length(s_O).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .weyl import CoxeterGroup

ORDER_CAP = 50


class InvalidAutomorphism(ValueError):
    pass


class OrderCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation of generator positions (position 0 is s0 for affine groups)."""

    perm: tuple[int, ...]

    @property
    def order(self) -> int:
        k = 1
        cur = self.perm
        ident = tuple(range(len(self.perm)))
        while cur != ident:
            cur = tuple(self.perm[i] for i in cur)
            k += 1
        return k

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.perm)):
            if i in seen:
                continue
            orb = [i]
            j = self.perm[i]
            while j != i:
                orb.append(j)
                j = self.perm[j]
            seen.update(orb)
            out.append(tuple(sorted(orb)))
        return sorted(out)

    def validate(self, group: CoxeterGroup) -> None:
        n = group.n_generators
        if sorted(self.perm) != list(range(n)):
            raise InvalidAutomorphism(f"{list(self.perm)} is not a permutation of {n} generators")
        if self.order not in (1, 2, 3):
            raise InvalidAutomorphism(f"order {self.order} not in {{1, 2, 3}}")
        m = group.coxeter_matrix()
        p = self.perm
        for i in range(n):
            for j in range(n):
                if m[p[i]][p[j]] != m[i][j]:
                    raise InvalidAutomorphism("permutation does not preserve the Coxeter matrix")
        special = [i for i in range(n) if i not in group.finite_indices]
        for i in special:
            if p[i] != i:
                raise InvalidAutomorphism("automorphism must fix the special generator s0")

    def apply(self, group: CoxeterGroup, w):
        """sigma(w), by relabelling a reduced word."""
        return group.from_word(self.perm[i] for i in group.reduced_word(w))


def parse_sigma(text: str | Sequence[int]) -> DiagramAutomorphism:
    """``"0,2,1"`` or ``"[0,2,1]"`` -> DiagramAutomorphism."""
    if isinstance(text, str):
        body = text.strip().strip("[]")
        vals = tuple(int(t) for t in body.replace(" ", "").split(",") if t)
    else:
        vals = tuple(int(t) for t in text)
    return DiagramAutomorphism(vals)


def fixed_subgroup_membership(group: CoxeterGroup, w, sigma: DiagramAutomorphism) -> bool:
    return group.key(sigma.apply(group, w)) == group.key(w)


def _parabolic_longest(group: CoxeterGroup, idx: Sequence[int]):
    gens = [group.generators[i] for i in idx]
    best = group.identity
    seen = {group.key(best)}
    queue = deque([best])
    while queue:
        w = queue.popleft()
        if group.length(w) > group.length(best):
            best = w
        for s in gens:
            u = group.mul(w, s)
            k = group.key(u)
            if k not in seen:
                seen.add(k)
                queue.append(u)
    return best


class FoldedGroup(CoxeterGroup):
    """('W, 'S) inside a parent group, weighted by the parent's length."""

    def __init__(self, parent: CoxeterGroup, sigma: DiagramAutomorphism):
        super().__init__()
        sigma.validate(parent)
        self.parent = parent
        self.sigma = sigma
        self.orbits = sigma.orbits()
        self.identity = parent.identity
        gens = []
        for orb in self.orbits:
            s = _parabolic_longest(parent, orb)
            if parent.mul(s, s) != parent.identity:
                raise AssertionError(f"longest element of orbit {orb} is not an involution")
            if not fixed_subgroup_membership(parent, s, sigma):
                raise AssertionError(f"longest element of orbit {orb} is not sigma-fixed")
            gens.append(s)
        self.generators = tuple(gens)
        self.weights = tuple(parent.length(s) for s in gens)
        pnames = parent.names
        self.names = tuple("s[" + ",".join(pnames[i] for i in orb) + "]" for orb in self.orbits)
        parent_finite = set(parent.finite_indices)
        self.finite_indices = tuple(k for k, orb in enumerate(self.orbits) if set(orb) <= parent_finite)
        self._len_memo: dict = {}
        self._check_orders()

    def _check_orders(self) -> None:
        self.folded_coxeter_matrix = self.coxeter_matrix(cap=ORDER_CAP)
        n = self.n_generators
        for i in range(n):
            for j in range(i + 1, n):
                if self.folded_coxeter_matrix[i][j] == 0 and not self._infinite_order(i, j):
                    raise OrderCapExceeded(f"order of s_{i} s_{j} exceeds {ORDER_CAP}")

    def _infinite_order(self, i: int, j: int) -> bool:
        parent = self.parent
        if len(parent.finite_indices) == parent.n_generators:
            return False
        # the |W0|-th power of an affine element is a translation;
        # a nonzero translation has infinite order
        p = self.mul(self.generators[i], self.generators[j])
        q = self.identity
        for _ in range(len(parent.finite_subgroup)):
            q = self.mul(q, p)
        return q.is_translation() and q != self.identity

    @property
    def label(self) -> str:
        return f"{self.parent.label}/fold{list(self.sigma.perm)}"

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def key(self, w):
        return self.parent.key(w)

    def weight(self, w) -> int:
        """L(w) = parent length."""
        return self.parent.length(w)

    def length(self, w) -> int:
        """Coxeter length in ('W, 'S), by stripping descents (s is a descent iff L drops)."""
        k = self.parent.key(w)
        hit = self._len_memo.get(k)
        if hit is not None:
            return hit
        cur = w
        count = 0
        pl = self.parent.length
        while pl(cur):
            for s in self.generators:
                nxt = self.parent.mul(s, cur)
                if pl(nxt) < pl(cur):
                    cur = nxt
                    count += 1
                    break
            else:
                raise ValueError("element is not in the fixed subgroup")
        self._len_memo[k] = count
        return count

    def contains(self, w) -> bool:
        return fixed_subgroup_membership(self.parent, w, self.sigma)

    def element_to_json(self, w):
        return self.parent.element_to_json(w)

    def element_from_json(self, data):
        return self.parent.element_from_json(data)

    def translation_element(self, coords):
        return self.parent.translation_element(coords)

    def to_word_in_parent(self, word: Sequence[int]) -> list[int]:
        """Expand a word in 'S into a word in S."""
        out = []
        for k in word:
            out.extend(self.parent.reduced_word(self.generators[k]))
        return out


@dataclass(frozen=True)
class FoldedDatum:
    orbits: list[tuple[int, ...]]
    folded_generators: tuple
    folded_coxeter_matrix: list[list[int]]
    weight: tuple[int, ...]
    group: FoldedGroup


def fold(group: CoxeterGroup, sigma: DiagramAutomorphism | Sequence[int]) -> FoldedDatum:
    """Fold a simply-laced group by ``sigma``."""
    if not isinstance(sigma, DiagramAutomorphism):
        sigma = DiagramAutomorphism(tuple(sigma))
    datum = getattr(group, "datum", None)
    if datum is not None and not datum.is_simply_laced():
        raise InvalidAutomorphism("folding needs a simply-laced datum")
    fg = FoldedGroup(group, sigma)
    return FoldedDatum(fg.orbits, fg.generators, fg.folded_coxeter_matrix, fg.weights, fg)
