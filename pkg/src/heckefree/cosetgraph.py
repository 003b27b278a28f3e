"""Coset graphs: canonical numbering, representative words, spanning tree.

Two constructions are provided.  `build_lex` is the plain orbit algorithm:
a FIFO queue explored with the generators in the order S-hat, which numbers
the cosets in the length-lexicographic order induced by S-hat.  `build_dc`
is the double-coset variant: a second queue P drives the exploration so
that representative words of cosets in the same W0-double-coset share the
double-coset representative as a common prefix.

In both, the spanning tree records the discovery edge of each coset, and
repword[l] is the product of tree-edge labels from the trivial coset, a
minimal-length representative word for coset l.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .enumerate import CosetAction
from .presentations import Letter, Word

# one colour per generator label (DOT export)
_PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628")


@dataclass(frozen=True)
class CosetGraph:
    """The labelled graph of an action, renumbered canonically.

    order[l] is the underlying action coset of canonical vertex l; the
    basepoint is vertex 0 with repword the empty word.  nbr[l][g-1] is the
    canonical vertex l * s_g; tree holds (l, g) pairs meaning the edge from
    l to nbr[l][g-1] labelled g was a discovery (spanning-tree) edge.
    """

    action: CosetAction
    mode: str  # "lex" | "dc"
    shat: tuple[int, ...]
    order: tuple[int, ...]
    repword: tuple[Word, ...]
    nbr: tuple[tuple[int, ...], ...]
    tree: frozenset[tuple[int, int]]

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def ngens(self) -> int:
        return self.action.ngens

    def neighbor(self, l: int, gen: int) -> int:
        return self.nbr[l][gen - 1]

    def is_tree_edge(self, l: int, gen: int) -> bool:
        return (l, gen) in self.tree

    def edges(self) -> list[tuple[int, int, int]]:
        """Undirected edges (l, k, gen) with l <= k, self-loops included."""
        out = []
        for l in range(self.n):
            for g in range(1, self.ngens + 1):
                k = self.nbr[l][g - 1]
                if l <= k:
                    out.append((l, k, g))
        return out

    def repwords_json(self) -> str:
        return json.dumps([str(w) for w in self.repword])


def _finish(
    action: CosetAction,
    mode: str,
    shat: tuple[int, ...],
    order: list[int],
    repword: list[Word],
    tree: set[tuple[int, int]],
) -> CosetGraph:
    rank = {c: l for l, c in enumerate(order)}
    nbr = tuple(
        tuple(rank[action.act(c, g)] for g in range(1, action.ngens + 1))
        for c in order
    )
    return CosetGraph(
        action,
        mode,
        shat,
        tuple(order),
        tuple(repword),
        nbr,
        frozenset(tree),
    )


def build_lex(action: CosetAction, shat: Iterable[int]) -> CosetGraph:
    """Breadth-first orbit in S-hat order; vertices in discovery order."""
    shat = tuple(shat)
    order = [action.basepoint]
    rank = {action.basepoint: 0}
    repword: list[Word] = [Word()]
    tree: set[tuple[int, int]] = set()
    head = 0
    while head < len(order):
        l = head
        c = order[head]
        head += 1
        for s in shat:
            z = action.act(c, s)
            if z not in rank:
                rank[z] = len(order)
                order.append(z)
                repword.append(repword[l] * Word((Letter(s),)))
                tree.add((l, s))
    return _finish(action, "lex", shat, order, repword, tree)


def build_dc(
    action: CosetAction, shat: Iterable[int], subgroup: Iterable[int]
) -> CosetGraph:
    """Double-coset grouping: a queue P of double-coset seeds drives an
    inner queue Q that closes each W0-orbit under the J-generators before
    the next K-generator is applied."""
    shat = tuple(shat)
    J = set(subgroup)
    jord = tuple(s for s in shat if s in J)
    kord = tuple(s for s in shat if s not in J)

    order = [action.basepoint]
    rank = {action.basepoint: 0}
    repword: list[Word] = [Word()]
    tree: set[tuple[int, int]] = set()
    P: deque[int] = deque([0])
    Q: deque[int] = deque([0])

    def process(l: int, s: int) -> None:
        z = action.act(order[l], s)
        if z not in rank:
            rank[z] = len(order)
            order.append(z)
            repword.append(repword[l] * Word((Letter(s),)))
            tree.add((l, s))
            Q.append(rank[z])
            P.append(rank[z])

    while P:
        y = P.popleft()
        for t in kord:
            while Q:
                x = Q.popleft()
                for s in jord:
                    process(x, s)
            process(y, t)
    return _finish(action, "dc", shat, order, repword, tree)


def export_dot(graph: CosetGraph, name: str = "cosets") -> str:
    """DOT text: one colour per generator, spanning-tree edges bold.

    Vertices carry their 1-based canonical index; self-loops are kept (they
    are the subgroup-type entries of the multiplication table).
    """
    lines = [f"graph {name} {{"]
    lines.append("  node [shape=circle fontsize=10];")
    for l in range(graph.n):
        lines.append(f"  {l + 1};")
    for l, k, g in graph.edges():
        colour = _PALETTE[(g - 1) % len(_PALETTE)]
        attrs = [f'color="{colour}"']
        if graph.is_tree_edge(l, g) or graph.is_tree_edge(k, g):
            attrs.append("style=bold")
        lines.append(f"  {l + 1} -- {k + 1} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
