"""The Iwahori-Hecke algebra H0 of a parabolic Coxeter subgroup W0.

Elements are sparse combinations of the natural basis {T_w}, with w running
over W0 and coefficients in Z[q, q^-1].  W0 elements are indexed by the
regular coset action of the subgroup presentation; a breadth-first pass from
the identity fixes the length function and one reduced word per element, so
a product T_a * T_b unfolds b's reduced word through the quadratic relation

    T_s^2 = (q-1) T_s + q,        T_s^-1 = q^-1 T_s + (q^-1 - 1) T_e.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .enumerate import CosetAction, todd_coxeter
from .laurent import ONE, Q, QINV, QINV_M1, QM1, LaurentPoly, ZERO
from .presentations import Letter, Presentation, Relation, Word


@dataclass(frozen=True)
class CoxeterData:
    """Regular action, lengths and fixed reduced words for W0.

    `gens` are the original generator labels of the ambient presentation;
    right[i] / left[i] are the right- and left-multiplication permutations
    of gens[i] on element indices, with 0 the identity element.
    """

    gens: tuple[int, ...]
    action: CosetAction
    length: tuple[int, ...]
    redword: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    left: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.length)

    def local(self, gen: int) -> int:
        return self.gens.index(gen)

    @classmethod
    def for_subgroup(cls, pres: Presentation, subgroup: Iterable[int]) -> CoxeterData:
        """Build W0 = <J> from the relations of `pres` involving only J."""
        J = tuple(sorted(subgroup))
        local = {s: i + 1 for i, s in enumerate(J)}

        def relabel(w: Word) -> Word:
            return Word(tuple(Letter(local[l.gen], l.inverted) for l in w))

        sub_rels = tuple(
            Relation(relabel(r.lhs), relabel(r.rhs))
            for r in pres.restricted_to(J)
        )
        action = todd_coxeter(Presentation(len(J), sub_rels), ())
        n = action.n
        right = action.perm

        length = [0] * n
        redword: list[tuple[int, ...]] = [()] * n
        seen = [False] * n
        seen[0] = True
        order = [0]
        for e in order:
            for i, s in enumerate(J):
                f = right[i][e]
                if not seen[f]:
                    seen[f] = True
                    length[f] = length[e] + 1
                    redword[f] = redword[e] + (s,)
                    order.append(f)

        left = []
        for i in range(len(J)):
            base = right[i][0]  # the element s_i itself
            col = []
            for e in range(n):
                c = base
                for s in redword[e]:
                    c = right[local[s] - 1][c]
                col.append(c)
            left.append(tuple(col))

        return cls(
            J,
            action,
            tuple(length),
            tuple(redword),
            right,
            tuple(left),
        )


class HeckeElt:
    """A sparse element of H0 in the natural basis."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: "HeckeAlgebra", coeffs: Mapping[int, LaurentPoly]):
        self.alg = alg
        self.coeffs: dict[int, LaurentPoly] = {w: c for w, c in coeffs.items() if c}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeckeElt) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset((w, c) for w, c in self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: HeckeElt) -> HeckeElt:
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        return HeckeElt(self.alg, out)

    def __neg__(self) -> HeckeElt:
        return HeckeElt(self.alg, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: HeckeElt) -> HeckeElt:
        return self + (-other)

    def __mul__(self, other: "HeckeElt | LaurentPoly | int") -> HeckeElt:
        if isinstance(other, HeckeElt):
            return self.alg.mul(self, other)
        return HeckeElt(self.alg, {w: c * other for w, c in self.coeffs.items()})

    def __rmul__(self, other: "LaurentPoly | int") -> HeckeElt:
        return HeckeElt(self.alg, {w: c * other for w, c in self.coeffs.items()})

    def is_unit_basis(self) -> bool:
        """True when self == 1 * T_e (fast path for products)."""
        return len(self.coeffs) == 1 and self.coeffs.get(0) == ONE

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        data = self.alg.data
        parts = []
        for w in sorted(self.coeffs, key=lambda w: (data.length[w], w)):
            poly = self.coeffs[w]
            word = "".join(str(s) for s in data.redword[w]) or "e"
            p = str(poly) if len(poly.terms) == 1 and not str(poly).startswith("-") else f"({poly})"
            parts.append(f"{p}*T[{word}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<{self}>"


class HeckeAlgebra:
    """Arithmetic in H0 over the fixed element indexing of a CoxeterData."""

    def __init__(self, data: CoxeterData):
        self.data = data
        self._unit = HeckeElt(self, {0: ONE})

    # -- constructors --------------------------------------------------

    def zero(self) -> HeckeElt:
        return HeckeElt(self, {})

    def unit(self) -> HeckeElt:
        return self._unit

    def gen(self, s: int) -> HeckeElt:
        return HeckeElt(self, {self.data.right[self.data.local(s)][0]: ONE})

    def elt(self, coeffs: Mapping[int, LaurentPoly]) -> HeckeElt:
        return HeckeElt(self, coeffs)

    def from_word(self, word: Word) -> HeckeElt:
        """Left-to-right product of generator factors starting from T_e."""
        h = self._unit
        for letter in word:
            h = self.mul_gen_right(h, letter.gen, letter.inverted)
        return h

    # -- products ------------------------------------------------------

    def mul_gen_right(self, h: HeckeElt, s: int, inverted: bool = False) -> HeckeElt:
        """h * T_s (or h * T_s^-1): the quadratic relation applied termwise.

        T_w T_s is T_ws when the length goes up, else q T_ws + (q-1) T_w;
        for the inverse, T_w T_s^-1 is T_ws when the length goes down, else
        q^-1 T_ws + (q^-1 - 1) T_w.
        """
        data = self.data
        if s not in data.gens:
            raise ValueError(f"generator {s} is not in the parabolic subgroup")
        right = data.right[data.local(s)]
        ln = data.length
        out: dict[int, LaurentPoly] = {}
        for w, c in h.coeffs.items():
            ws = right[w]
            up = ln[ws] > ln[w]
            if not inverted:
                if up:
                    _acc(out, ws, c)
                else:
                    _acc(out, ws, c * Q)
                    _acc(out, w, c * QM1)
            else:
                if not up:
                    _acc(out, ws, c)
                else:
                    _acc(out, ws, c * QINV)
                    _acc(out, w, c * QINV_M1)
        return HeckeElt(self, out)

    def mul_gen_left(self, s: int, h: HeckeElt, inverted: bool = False) -> HeckeElt:
        """T_s * h (or T_s^-1 * h), the mirror image via length(sw)."""
        data = self.data
        if s not in data.gens:
            raise ValueError(f"generator {s} is not in the parabolic subgroup")
        left = data.left[data.local(s)]
        ln = data.length
        out: dict[int, LaurentPoly] = {}
        for w, c in h.coeffs.items():
            sw = left[w]
            up = ln[sw] > ln[w]
            if not inverted:
                if up:
                    _acc(out, sw, c)
                else:
                    _acc(out, sw, c * Q)
                    _acc(out, w, c * QM1)
            else:
                if not up:
                    _acc(out, sw, c)
                else:
                    _acc(out, sw, c * QINV)
                    _acc(out, w, c * QINV_M1)
        return HeckeElt(self, out)

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        """Bilinear product, expanding b's basis indices by reduced words."""
        if b.is_unit_basis():
            return a
        if a.is_unit_basis():
            return b
        redword = self.data.redword
        out: dict[int, LaurentPoly] = {}
        for w, c in b.coeffs.items():
            t = a
            for s in redword[w]:
                t = self.mul_gen_right(t, s)
            for k, p in t.coeffs.items():
                _acc(out, k, p * c)
        return HeckeElt(self, out)

    # -- structure -----------------------------------------------------

    def invert_q_monomial(self, h: HeckeElt) -> HeckeElt | None:
        """Inverse of h when h = q^k T_w; None otherwise.

        Only such obviously invertible coefficients are ever inverted: the
        edge-reversal step is restricted to them, and None is the normal
        "reversal does not apply" outcome.
        """
        if len(h.coeffs) != 1:
            return None
        (w, c), = h.coeffs.items()
        k = c.is_power_of_q()
        if k is None:
            return None
        t = self._unit
        for s in reversed(self.data.redword[w]):
            t = self.mul_gen_right(t, s, inverted=True)
        return LaurentPoly.q_power(-k) * t

    def eval_q1(self, h: HeckeElt) -> dict[int, int]:
        """Specialise q = 1: an integer combination of W0 elements."""
        out = {}
        for w, c in h.coeffs.items():
            v = c.eval_at_one()
            if v:
                out[w] = v
        return out

    def group_mul(self, a: int, b: int) -> int:
        """Product in W0 of two element indices (via b's reduced word)."""
        data = self.data
        for s in data.redword[b]:
            a = data.right[data.local(s)][a]
        return a


def _acc(out: dict[int, LaurentPoly], key: int, val: LaurentPoly) -> None:
    s = out.get(key)
    s = val if s is None else s + val
    if s:
        out[key] = s
    elif key in out:
        del out[key]
