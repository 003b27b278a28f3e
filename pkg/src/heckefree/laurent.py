"""Exact arithmetic in the coefficient ring Z[q, q^-1].

Every Hecke-algebra coefficient in this package is a Laurent polynomial in
the deformation parameter q with unbounded integer coefficients.  A
polynomial is stored as a sparse map from exponent to nonzero coefficient,
kept canonical at all times, so two polynomials are equal exactly when their
term maps coincide.
"""

from __future__ import annotations

from typing import Mapping


class LaurentPoly:
    """An element of Z[q, q^-1] in canonical sparse form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None) -> None:
        self.terms: dict[int, int] = (
            {e: c for e, c in terms.items() if c} if terms else {}
        )

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def const(cls, coeff: int) -> LaurentPoly:
        return cls({0: coeff})

    @classmethod
    def q_power(cls, exp: int) -> LaurentPoly:
        return cls({exp: 1})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> LaurentPoly:
        return cls({exp: coeff})

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        p = LaurentPoly.__new__(LaurentPoly)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        p = LaurentPoly.__new__(LaurentPoly)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.const(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            if other == 1:
                return self
            p = LaurentPoly.__new__(LaurentPoly)
            p.terms = {e: c * other for e, c in self.terms.items()} if other else {}
            return p
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        p = LaurentPoly.__new__(LaurentPoly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers are only defined for units")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ------------------------------------------------------------------
    # structure queries

    def div_exact(self, d: LaurentPoly) -> LaurentPoly | None:
        """Exact division: the c with c*d == self, or None if no such
        Laurent polynomial exists.

        Inexactness is a normal outcome (it signals that an edge-reversal
        decomposition does not apply), not an error.
        """
        if not d.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return ZERO
        # Shift both operands to ordinary polynomials with nonzero constant
        # term; units of Z[q,q^-1] are +-q^k, so exactness is preserved.
        a_lo = min(self.terms)
        d_lo = min(d.terms)
        rem = {e - a_lo: c for e, c in self.terms.items()}
        div = {e - d_lo: c for e, c in d.terms.items()}
        d_top = max(div)
        d_lead = div[d_top]
        quo: dict[int, int] = {}
        while rem:
            r_top = max(rem)
            if r_top < d_top:
                return None
            lead, r = divmod(rem[r_top], d_lead)
            if r:
                return None
            shift = r_top - d_top
            quo[shift] = lead
            for e, c in div.items():
                ne = e + shift
                s = rem.get(ne, 0) - lead * c
                if s:
                    rem[ne] = s
                elif ne in rem:
                    del rem[ne]
        return LaurentPoly({e + a_lo - d_lo: c for e, c in quo.items()})

    def is_power_of_q(self) -> int | None:
        """The k with self == q^k, or None."""
        if len(self.terms) != 1:
            return None
        (e, c), = self.terms.items()
        return e if c == 1 else None

    def eval_at_one(self) -> int:
        """Specialisation q = 1, i.e. the sum of the coefficients."""
        return sum(self.terms.values())

    # ------------------------------------------------------------------
    # rendering

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                base = "q" if e == 1 else f"q^{e}"
                body = base if mag == 1 else f"{mag}*{base}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<{self}>"


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.q_power(1)
QINV = LaurentPoly.q_power(-1)
QM1 = Q - ONE
QINV_M1 = QINV - ONE
