"""Todd-Coxeter coset enumeration over the finite 2-reflection quotient W.

W is the quotient of the presented group by s^2 = 1 for every generator, so
each generator acts as an involution on cosets and a formal inverse s' acts
exactly like s.  The coset table is kept symmetric (defining x.s = y also
records y.s = x), which builds the involutivity in; the catalogued relations
are the only relators that need scanning.

The strategy is HLT with immediate coincidence processing and a final
standardisation pass (cosets renumbered in BFS order from the trivial
coset), so repeated runs produce identical tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .presentations import Presentation, Word

DEFAULT_MAX_COSETS = 1 << 22


class CosetLimitError(RuntimeError):
    """Live-coset limit exceeded: wrong presentation or limit too small."""


@dataclass(frozen=True)
class CosetAction:
    """A complete permutation action of the generators on cosets.

    perm[g][i] is the coset i * s_{g+1}; every perm[g] is an involution and
    the action is transitive from the basepoint (coset 0).
    """

    ngens: int
    perm: tuple[tuple[int, ...], ...]
    basepoint: int = 0

    @property
    def n(self) -> int:
        return len(self.perm[0]) if self.perm else 1

    def act(self, coset: int, gen: int) -> int:
        return self.perm[gen - 1][coset]

    def trace(self, coset: int, word: Word | Iterable) -> int:
        """Follow a word; inverse letters act like plain ones (s' = s in W)."""
        for letter in word:
            coset = self.perm[letter.gen - 1][coset]
        return coset

    def to_csv(self) -> str:
        """One row per coset, one column per generator, 1-based entries."""
        header = "coset," + ",".join(f"s{g}" for g in range(1, self.ngens + 1))
        lines = [header]
        for i in range(self.n):
            lines.append(
                f"{i + 1}," + ",".join(str(self.perm[g][i] + 1) for g in range(self.ngens))
            )
        return "\n".join(lines) + "\n"


def _relators(pres: Presentation) -> list[tuple[int, ...]]:
    # u = v becomes the relator u * reverse(v): inverses are dropped because
    # every generator is an involution in W.
    rels: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for rel in pres.relations:
        w = tuple(
            [l.gen - 1 for l in rel.lhs] + [l.gen - 1 for l in reversed(rel.rhs.letters)]
        )
        if w and w not in seen:
            seen.add(w)
            rels.append(w)
    return rels


def todd_coxeter(
    pres: Presentation,
    subgroup: Iterable[int] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> CosetAction:
    """Enumerate the cosets of <subgroup> in W and return the induced action.

    `subgroup` lists generator labels; the empty subgroup yields the regular
    action and hence the group order.
    """
    m = pres.ngens
    rels = _relators(pres)

    tab: list[int] = [-1] * m  # flat n x m table, -1 = undefined
    parent: list[int] = [0]  # union-find over cosets; parent[c] == c iff live
    nlive = 1
    blank = (-1,) * m

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def coincide(a: int, b: int) -> None:
        nonlocal nlive
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            a = find(a)
            b = find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            parent[b] = a
            nlive -= 1
            rb = b * m
            for x in range(m):
                d = tab[rb + x]
                if d == -1:
                    continue
                tab[rb + x] = -1
                if tab[d * m + x] == b:
                    tab[d * m + x] = -1
                dd = find(d)
                ta = tab[a * m + x]
                if ta != -1:
                    stack.append((dd, ta))
                else:
                    td = tab[dd * m + x]
                    if td != -1:
                        # x is involutive, so a and td are both dd.x
                        stack.append((a, td))
                    else:
                        tab[a * m + x] = dd
                        tab[dd * m + x] = a

    # the parabolic generators fix the trivial coset
    for s in subgroup:
        tab[s - 1] = 0

    ci = 0
    while ci < len(parent):
        if parent[ci] != ci:
            ci += 1
            continue
        for rel in rels:
            # scan-and-fill the relator from ci
            i = 0
            j = len(rel) - 1
            f = b = ci
            while True:
                while i <= j:
                    nxt = tab[f * m + rel[i]]
                    if nxt < 0:
                        break
                    f = nxt
                    i += 1
                if i > j:
                    if f != b:
                        coincide(f, b)
                    break
                while j >= i:
                    prv = tab[b * m + rel[j]]
                    if prv < 0:
                        break
                    b = prv
                    j -= 1
                if j < i:
                    coincide(f, b)
                    break
                if j == i:
                    x = rel[i]
                    tab[f * m + x] = b
                    tab[b * m + x] = f
                    break
                # gap of length >= 2: define a coset and keep scanning
                x = rel[i]
                if nlive >= max_cosets:
                    raise CosetLimitError(
                        f"more than {max_cosets} live cosets; raise max_cosets?"
                    )
                d = len(parent)
                parent.append(d)
                tab.extend(blank)
                nlive += 1
                tab[f * m + x] = d
                tab[d * m + x] = f
                f = d
                i += 1
            if parent[ci] != ci:
                break
        if parent[ci] == ci:
            row = ci * m
            for x in range(m):
                if tab[row + x] == -1:
                    if nlive >= max_cosets:
                        raise CosetLimitError(
                            f"more than {max_cosets} live cosets; raise max_cosets?"
                        )
                    d = len(parent)
                    parent.append(d)
                    tab.extend(blank)
                    nlive += 1
                    tab[row + x] = d
                    tab[d * m + x] = ci
        ci += 1

    # compress live cosets, renumbering in BFS order from the basepoint
    root = find(0)
    index = {root: 0}
    order = [root]
    for c in order:
        base = c * m
        for x in range(m):
            d = find(tab[base + x])
            if d not in index:
                index[d] = len(order)
                order.append(d)
    if len(order) != nlive:
        raise AssertionError("coset table not transitive after completion")
    perm = tuple(
        tuple(index[find(tab[c * m + x])] for c in order) for x in range(m)
    )
    return CosetAction(m, perm)


def group_order(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """|W|: the index of the trivial subgroup."""
    return todd_coxeter(pres, (), max_cosets=max_cosets).n
