"""The fill-in engine: the |W/W0| x |S| multiplication table of H over H0.

Each table entry is the expansion of x_l * s as an H0-linear combination of
the coset symbols x_k.  The table is seeded from the spanning tree (both
directions) and the parabolic generators, then completed to a fixpoint by
two moves:

* cyclic expansion: replace the acting generator s by an equivalent word w
  extracted from a defining relation (s^-1 w = 1 in the braid group) and
  push x_l through w entry by entry;
* edge reversal: when x_l.s = alpha x_n - (q-1) beta (or the companion
  shape with an x_l term), and alpha is an obviously invertible q^k T_w,
  solve for x_n.s.

Incompleteness is an outcome, not an error: the fixpoint report carries the
list of entries that stayed empty.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from random import Random
from typing import Iterable, Mapping

from .cosetgraph import CosetGraph
from .hecke import HeckeAlgebra, HeckeElt
from .laurent import LaurentPoly, ONE, Q, QINV, QINV_M1, QM1
from .presentations import Presentation, Word


class ModuleVector:
    """A sparse H0-linear combination of coset symbols x_k (0-based keys)."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: HeckeAlgebra, coeffs: Mapping[int, HeckeElt]):
        self.alg = alg
        self.coeffs: dict[int, HeckeElt] = {k: h for k, h in coeffs.items() if h}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ModuleVector) and self.coeffs == other.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: ModuleVector) -> ModuleVector:
        out = dict(self.coeffs)
        for k, h in other.coeffs.items():
            s = out.get(k)
            s = h if s is None else s + h
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return ModuleVector(self.alg, out)

    def __neg__(self) -> ModuleVector:
        return ModuleVector(self.alg, {k: -h for k, h in self.coeffs.items()})

    def __sub__(self, other: ModuleVector) -> ModuleVector:
        return self + (-other)

    def __rmul__(self, scalar: LaurentPoly | int) -> ModuleVector:
        return ModuleVector(self.alg, {k: scalar * h for k, h in self.coeffs.items()})

    def left_mul(self, h: HeckeElt) -> ModuleVector:
        """h . self: multiply every coefficient by h on the left."""
        return ModuleVector(
            self.alg, {k: self.alg.mul(h, g) for k, g in self.coeffs.items()}
        )

    def div_exact(self, d: LaurentPoly) -> ModuleVector | None:
        """Coefficient-wise exact division by d, or None if any fails."""
        out: dict[int, HeckeElt] = {}
        for k, h in self.coeffs.items():
            hh: dict[int, LaurentPoly] = {}
            for w, p in h.coeffs.items():
                quo = p.div_exact(d)
                if quo is None:
                    return None
                hh[w] = quo
            out[k] = HeckeElt(self.alg, hh)
        return ModuleVector(self.alg, out)

    def eval_q1(self) -> dict[int, dict[int, int]]:
        """q = 1 specialisation per coset symbol."""
        out = {}
        for k, h in self.coeffs.items():
            v = self.alg.eval_q1(h)
            if v:
                out[k] = v
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            h = self.coeffs[k]
            if len(h.coeffs) == 1 and 0 in h.coeffs:
                poly = h.coeffs[0]
                if poly == ONE:
                    parts.append(f"x{k + 1}")
                    continue
                text = str(poly)
                coeff = text if len(poly.terms) == 1 and not text.startswith("-") else f"({text})"
                parts.append(f"{coeff}*x{k + 1}")
            else:
                parts.append(f"({h})*x{k + 1}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<{self}>"


def unit_vector(alg: HeckeAlgebra, l: int) -> ModuleVector:
    return ModuleVector(alg, {l: alg.unit()})


# ----------------------------------------------------------------------
# cyclic expansions


def cyclic_expansions(pres: Presentation) -> dict[int, tuple[Word, ...]]:
    """For each generator s, all rewritings of s extracted from relations.

    A plain occurrence splitting a side as a.s.b yields s -> a^-1 (other) b^-1;
    an inverse occurrence a.s'.b yields s -> b (other)^-1 a, the inverse of
    the s' rewriting.  Results are freely reduced and deduplicated, in a
    fixed scan order (lhs then rhs, positions left to right).
    """
    out: dict[int, list[Word]] = {s: [] for s in range(1, pres.ngens + 1)}
    seen: dict[int, set[tuple]] = {s: set() for s in range(1, pres.ngens + 1)}
    for rel in pres.relations:
        for side, other in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            letters = side.letters
            for p, letter in enumerate(letters):
                a = Word(letters[:p])
                b = Word(letters[p + 1 :])
                if not letter.inverted:
                    w = (a.inverse() * other * b.inverse()).reduced()
                else:
                    w = (b * other.inverse() * a).reduced()
                key = w.letters
                if key not in seen[letter.gen]:
                    seen[letter.gen].add(key)
                    out[letter.gen].append(w)
    return {s: tuple(ws) for s, ws in out.items()}


# ----------------------------------------------------------------------
# the table


@dataclass(frozen=True)
class FillReport:
    """Outcome of a fixpoint fill: filled + missing = n * ngens."""

    filled: int
    missing: tuple[tuple[int, int], ...]  # (coset index, generator label)
    steps: tuple[str, ...]


class MultTable:
    """The mutable n x |S| table of entries x_l.s with a provenance log."""

    def __init__(self, graph: CosetGraph, alg: HeckeAlgebra):
        self.graph = graph
        self.alg = alg
        self.entries: list[list[ModuleVector | None]] = [
            [None] * graph.ngens for _ in range(graph.n)
        ]
        self.log: list[str] = []
        self.filled = 0

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def ngens(self) -> int:
        return self.graph.ngens

    def get(self, l: int, s: int) -> ModuleVector | None:
        return self.entries[l][s - 1]

    def set(self, l: int, s: int, value: ModuleVector, why: str) -> None:
        if self.entries[l][s - 1] is not None:
            raise ValueError(f"entry x_{l + 1}.{s} already filled")
        self.entries[l][s - 1] = value
        self.filled += 1
        self.log.append(f"x_{l + 1}.{s} = {why}")

    def replace(self, l: int, s: int, value: ModuleVector | None) -> None:
        """Overwrite an entry (mutation testing of negative controls only)."""
        self.entries[l][s - 1] = value

    def missing(self) -> list[tuple[int, int]]:
        return [
            (l, s)
            for l in range(self.n)
            for s in range(1, self.ngens + 1)
            if self.entries[l][s - 1] is None
        ]

    @property
    def complete(self) -> bool:
        return self.filled == self.n * self.ngens

    def dump(self) -> str:
        """One line per entry, `x<l>.<s> = <value>`; unfilled entries show
        MISSING."""
        lines = []
        for l in range(self.n):
            for s in range(1, self.ngens + 1):
                e = self.entries[l][s - 1]
                lines.append(f"x{l + 1}.{s} = {e if e is not None else 'MISSING'}")
        return "\n".join(lines) + "\n"


def init_table(graph: CosetGraph, alg: HeckeAlgebra) -> MultTable:
    """Seed a table: both directions of every spanning-tree edge, then the
    parabolic entries x_1.s = T_s . x_1 for s in J.

    The reverse tree direction is the edge-reversal lemma with alpha = 1 and
    beta = 0: x_n.s = q x_l + (q-1) x_n.
    """
    t = MultTable(graph, alg)
    unit = alg.unit()
    for l in range(graph.n):
        for s in range(1, graph.ngens + 1):
            if (l, s) in graph.tree:
                k = graph.neighbor(l, s)
                t.set(l, s, ModuleVector(alg, {k: unit}), f"tree(x_{k + 1})")
                t.set(
                    k,
                    s,
                    ModuleVector(alg, {l: Q * unit, k: QM1 * unit}),
                    f"tree-reverse(x_{l + 1})",
                )
    for s in alg.data.gens:
        t.set(0, s, ModuleVector(alg, {0: alg.gen(s)}), "subgroup")
    return t


# ----------------------------------------------------------------------
# elementary moves
#
# The dict-level cores return (value, blocker): on success the blocker is
# None, otherwise the first missing table cell (coset, generator) the walk
# ran into.  Entries are immutable once set, so a blocked walk stays blocked
# exactly until that cell fills.


def _step(
    coeffs: dict[int, HeckeElt], gen: int, inverted: bool, table: MultTable
) -> tuple[dict[int, HeckeElt] | None, tuple[int, int] | None]:
    alg = table.alg
    entries = table.entries
    col = gen - 1
    acc: dict[int, HeckeElt] = {}

    def add(k: int, h: HeckeElt) -> None:
        s = acc.get(k)
        s = h if s is None else s + h
        if s:
            acc[k] = s
        elif k in acc:
            del acc[k]

    for k, h in coeffs.items():
        entry = entries[k][col]
        if entry is None:
            return None, (k, gen)
        if inverted:
            for j, g in entry.coeffs.items():
                add(j, QINV * alg.mul(h, g))
            add(k, QINV_M1 * h)
        else:
            for j, g in entry.coeffs.items():
                add(j, alg.mul(h, g))
    return acc, None


def _walk(
    table: MultTable, start: int, word: Word
) -> tuple[dict[int, HeckeElt] | None, tuple[int, int] | None]:
    coeffs: dict[int, HeckeElt] = {start: table.alg.unit()}
    for letter in word:
        coeffs, blocker = _step(coeffs, letter.gen, letter.inverted, table)
        if coeffs is None:
            return None, blocker
    return coeffs, None


def apply_letter(
    v: ModuleVector, gen: int, inverted: bool, table: MultTable
) -> ModuleVector | None:
    """v . s (or v . s') through the table; None when an entry is absent.

    The inverse case uses the same entries via
    x_k.s' = q^-1 (x_k.s) + (q^-1 - 1) x_k.
    """
    coeffs, _ = _step(v.coeffs, gen, inverted, table)
    return None if coeffs is None else ModuleVector(v.alg, coeffs)


def apply_word(v: ModuleVector, word: Word, table: MultTable) -> ModuleVector | None:
    for letter in word:
        v = apply_letter(v, letter.gen, letter.inverted, table)
        if v is None:
            return None
    return v


def _revert_core(
    table: MultTable, l: int, s: int
) -> tuple[ModuleVector | None, tuple[int, int] | None]:
    """revert_edge with blocker reporting; see revert_edge for the maths."""
    alg = table.alg
    E = table.get(l, s)
    if E is None:
        return None, (l, s)
    n = table.graph.neighbor(l, s)
    if n == l:
        return None, None
    alpha = E.coeffs.get(n)
    if alpha is None:
        return None, None
    ainv = alg.invert_q_monomial(alpha)
    if ainv is None:
        return None, None

    alpha_xn = ModuleVector(alg, {n: alpha})
    head = ModuleVector(alg, {l: Q * ainv})

    beta = (alpha_xn - E).div_exact(QM1)
    if beta is not None:
        tail_coeffs, blocker = _step(beta.coeffs, s, True, table)
        if tail_coeffs is not None:
            tail = ModuleVector(alg, tail_coeffs)
            return (
                head
                + ModuleVector(alg, {n: QM1 * alg.unit()})
                + (Q * QM1) * tail.left_mul(ainv),
                None,
            )
        return None, blocker

    beta = (E - alpha_xn).div_exact(QM1)
    if beta is not None:
        beta = beta - unit_vector(alg, l)
        tail_coeffs, blocker = _step(beta.coeffs, s, False, table)
        if tail_coeffs is not None:
            tail = ModuleVector(alg, tail_coeffs)
            return head - QM1 * tail.left_mul(ainv), None
        return None, blocker

    return None, None


def revert_edge(table: MultTable, l: int, s: int) -> ModuleVector | None:
    """Derive x_n.s from the known entry x_l.s, where n = l.s != l.

    With alpha the coefficient of x_n and alpha' = invert_q_monomial(alpha):

      x_l.s = alpha x_n - (q-1) beta
          =>  x_n.s = q alpha' x_l + (q-1) x_n + q(q-1) alpha' (beta.s'),
      x_l.s = alpha x_n + (q-1)(x_l + beta)
          =>  x_n.s = q alpha' x_l - (q-1) alpha' (beta.s).

    The first shape is tried, then the second (they agree when both apply).
    None signals inapplicability: no monomial alpha, inexact division by
    q - 1 in both shapes, or a beta product hitting a missing entry.
    Whether x_n.s is still missing is the caller's business.
    """
    value, _ = _revert_core(table, l, s)
    return value


# ----------------------------------------------------------------------
# the fixpoint loop


def fixpoint_fill(
    table: MultTable,
    expansions: Mapping[int, Iterable[Word]],
    order_seed: int | None = None,
    sweep: bool = False,
) -> FillReport:
    """Fill missing entries by expansions and edge reversals to a fixpoint.

    The default engine is event-driven: a blocked attempt is retried only
    when the table cell it stopped at gets filled, which computes the same
    fixpoint as repeated sweeps (entries are write-once, so a blocked walk
    is deterministic until its blocker fills).  `sweep=True` selects the
    plain row-major resweep instead; `order_seed` randomises the visiting
    order.  The final missing set is the same in all cases.
    """
    if sweep:
        return _fill_sweep(table, expansions, order_seed)
    return _fill_events(table, expansions, order_seed)


def _try_cell(
    table: MultTable, expansions: Mapping[int, Iterable[Word]], l: int, s: int
) -> tuple[ModuleVector | None, str, set[tuple[int, int]]]:
    """One full attempt at cell (l, s): every expansion, then the reversal.

    Returns (value, provenance, blockers); blockers is the set of missing
    cells that stopped the failed attempts.
    """
    alg = table.alg
    blockers: set[tuple[int, int]] = set()
    for w in expansions.get(s, ()):
        coeffs, blocker = _walk(table, l, w)
        if coeffs is not None:
            return ModuleVector(alg, coeffs), f"x_{l + 1}.{w}", blockers
        blockers.add(blocker)
    k = table.graph.neighbor(l, s)
    if k != l:
        if table.get(k, s) is None:
            blockers.add((k, s))
        else:
            value, blocker = _revert_core(table, k, s)
            if value is not None:
                return value, f"revert(x_{k + 1}.{s})", blockers
            if blocker is not None:
                blockers.add(blocker)
    return None, "", blockers


def _fill_events(
    table: MultTable,
    expansions: Mapping[int, Iterable[Word]],
    order_seed: int | None,
) -> FillReport:
    cells = table.missing()
    if order_seed is not None:
        Random(order_seed).shuffle(cells)
    waiting: dict[tuple[int, int], list[tuple[int, int]]] = {}
    queued: set[tuple[int, int]] = set(cells)
    queue = deque(cells)
    while queue:
        l, s = queue.popleft()
        queued.discard((l, s))
        if table.get(l, s) is not None:
            continue
        value, why, blockers = _try_cell(table, expansions, l, s)
        if value is not None:
            table.set(l, s, value, why)
            for cell in waiting.pop((l, s), ()):
                if cell not in queued and table.get(*cell) is None:
                    queued.add(cell)
                    queue.append(cell)
        else:
            for b in blockers:
                waiting.setdefault(b, []).append((l, s))
    return FillReport(table.filled, tuple(table.missing()), tuple(table.log))


def _fill_sweep(
    table: MultTable,
    expansions: Mapping[int, Iterable[Word]],
    order_seed: int | None,
) -> FillReport:
    rng = Random(order_seed) if order_seed is not None else None
    while True:
        progress = False
        cells = table.missing()
        if rng is not None:
            rng.shuffle(cells)
        for l, s in cells:
            if table.get(l, s) is not None:
                continue
            value, why, _ = _try_cell(table, expansions, l, s)
            if value is not None:
                table.set(l, s, value, why)
                progress = True
        if not progress:
            break
    return FillReport(table.filled, tuple(table.missing()), tuple(table.log))
