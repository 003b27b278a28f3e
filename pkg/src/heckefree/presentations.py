"""Words, relations and the built-in catalog of group presentations.

Generators are labelled 1..m (m <= 9) and written as digits; a trailing
apostrophe marks a formal inverse, so ``12'3`` is s1 * s2^-1 * s3.  The empty
word denotes the identity.

Catalog files are UTF-8, line-oriented:

    group G24          case name
    gens 3             number of generators
    w0 B2              Coxeter type of the parabolic subgroup (display only)
    subgroup 2 3       generators of the parabolic subgroup (default J)
    rel 121 = 212      defining relation, both sides as words
    check u = v        relation verified in W only, never used for filling
    row dc 123 23 ok   catalogued run: mode, ordering S-hat, J, expected
                       result (`ok` for a complete fill, `fail(n)` for a
                       fixpoint with n entries left empty)

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterator


class WordSyntaxError(ValueError):
    """Raised on malformed word text; carries the byte offset."""

    def __init__(self, text: str, offset: int):
        self.offset = offset
        super().__init__(f"bad character at offset {offset} in word {text!r}")


@dataclass(frozen=True, slots=True)
class Letter:
    """A generator label with an optional formal-inverse mark."""

    gen: int
    inverted: bool = False

    def inverse(self) -> Letter:
        return Letter(self.gen, not self.inverted)

    def __str__(self) -> str:
        return f"{self.gen}'" if self.inverted else f"{self.gen}"


@dataclass(frozen=True, slots=True)
class Word:
    """A finite sequence of letters; the empty word is the identity."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        """Letters reversed, inversion flags toggled."""
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def reduced(self) -> Word:
        """Freely reduced form: no adjacent s*s' or s'*s pairs remain."""
        out: list[Letter] = []
        for l in self.letters:
            if out and out[-1].gen == l.gen and out[-1].inverted != l.inverted:
                out.pop()
            else:
                out.append(l)
        return Word(tuple(out))

    def max_gen(self) -> int:
        return max((l.gen for l in self.letters), default=0)

    def __str__(self) -> str:
        return "".join(str(l) for l in self.letters)


def parse_word(text: str) -> Word:
    """Parse ``( digit \"'\"? )*`` with digits 1..9 into a Word."""
    letters: list[Letter] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if not ch.isdigit() or ch == "0":
            raise WordSyntaxError(text, i)
        i += 1
        inverted = i < len(text) and text[i] == "'"
        if inverted:
            i += 1
        letters.append(Letter(int(ch), inverted))
    return Word(tuple(letters))


@dataclass(frozen=True, slots=True)
class Relation:
    """A two-sided relation lhs = rhs between words."""

    lhs: Word
    rhs: Word

    def max_gen(self) -> int:
        return max(self.lhs.max_gen(), self.rhs.max_gen())

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True, slots=True)
class Presentation:
    """Generators 1..ngens and a list of defining relations.

    Both sides of each relation are kept as given; the cyclic-expansion
    generator needs the two-sided form, so relations are never collapsed to
    relators here.
    """

    ngens: int
    relations: tuple[Relation, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.ngens <= 9:
            raise ValueError(f"generator count {self.ngens} outside 1..9")
        for rel in self.relations:
            if rel.max_gen() > self.ngens:
                raise ValueError(f"relation {rel} uses a label > {self.ngens}")

    def restricted_to(self, J: tuple[int, ...]) -> tuple[Relation, ...]:
        """The relations whose letters all lie in J (the parabolic ones)."""
        keep = set(J)
        return tuple(
            r
            for r in self.relations
            if all(l.gen in keep for l in r.lhs) and all(l.gen in keep for l in r.rhs)
        )


@dataclass(frozen=True, slots=True)
class CaseSpec:
    """One concrete run: case name, parabolic J, enumeration mode, ordering."""

    group: str
    subgroup: tuple[int, ...]
    mode: str  # "lex" | "dc"
    shat: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.mode not in ("lex", "dc"):
            raise ValueError(f"mode must be lex or dc, got {self.mode!r}")

    def ordering_text(self) -> str:
        """Render like (1,2*,3*) for lex or [1,2*,3*] for dc; * marks J."""
        inner = ",".join(
            f"{s}*" if s in self.subgroup else f"{s}" for s in self.shat
        )
        return f"({inner})" if self.mode == "lex" else f"[{inner}]"


@dataclass(frozen=True, slots=True)
class OrderingRow:
    """A catalogued run together with its expected outcome."""

    mode: str
    shat: tuple[int, ...]
    subgroup: tuple[int, ...]
    expect_missing: int  # 0 means the fill is expected to complete

    def spec_for(self, group: str) -> CaseSpec:
        return CaseSpec(group, self.subgroup, self.mode, self.shat)


@dataclass(frozen=True, slots=True)
class Case:
    """A catalogued group: presentation, default parabolic, result rows."""

    name: str
    w0type: str
    presentation: Presentation
    subgroup: tuple[int, ...]
    rows: tuple[OrderingRow, ...]
    checks: tuple[Relation, ...] = ()

    @property
    def default_spec(self) -> CaseSpec:
        row = self.rows[0]
        return CaseSpec(self.name, self.subgroup, row.mode, row.shat)


class PresentationFileError(ValueError):
    pass


_ROW_RE = re.compile(r"^(lex|dc)\s+(\d+)\s+(\d+)\s+(ok|fail\((\d+)\))$")


def parse_case_text(text: str, name_hint: str = "<text>") -> Case:
    """Parse one catalog file (grammar in the module docstring)."""
    name: str | None = None
    ngens: int | None = None
    w0type = ""
    subgroup: tuple[int, ...] | None = None
    relations: list[Relation] = []
    checks: list[Relation] = []
    rows: list[OrderingRow] = []

    def fail(lineno: int, msg: str) -> PresentationFileError:
        return PresentationFileError(f"{name_hint}:{lineno}: {msg}")

    def parse_rel(body: str, lineno: int) -> Relation:
        if "=" not in body:
            raise fail(lineno, "relation must contain '='")
        lhs, rhs = (part.strip() for part in body.split("=", 1))
        try:
            return Relation(parse_word(lhs), parse_word(rhs))
        except WordSyntaxError as exc:
            raise fail(lineno, str(exc)) from exc

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, body = line.partition(" ")
        body = body.strip()
        if key == "group":
            name = body
        elif key == "gens":
            ngens = int(body)
        elif key == "w0":
            w0type = body
        elif key == "subgroup":
            subgroup = tuple(int(tok) for tok in body.split())
        elif key == "rel":
            relations.append(parse_rel(body, lineno))
        elif key == "check":
            checks.append(parse_rel(body, lineno))
        elif key == "row":
            m = _ROW_RE.match(body)
            if not m:
                raise fail(lineno, f"bad row line {body!r}")
            mode, shat_s, j_s, result = m.group(1), m.group(2), m.group(3), m.group(4)
            expect = 0 if result == "ok" else int(m.group(5))
            rows.append(
                OrderingRow(
                    mode,
                    tuple(int(ch) for ch in shat_s),
                    tuple(int(ch) for ch in j_s),
                    expect,
                )
            )
        else:
            raise fail(lineno, f"unknown directive {key!r}")

    if name is None or ngens is None or subgroup is None or not rows:
        raise PresentationFileError(
            f"{name_hint}: needs group, gens, subgroup and at least one row"
        )
    pres = Presentation(ngens, tuple(relations))
    for row in rows:
        if sorted(row.shat) != list(range(1, ngens + 1)):
            raise PresentationFileError(
                f"{name_hint}: row ordering {row.shat} is not a permutation of 1..{ngens}"
            )
        if not row.subgroup or not set(row.subgroup) < set(range(1, ngens + 1)):
            raise PresentationFileError(
                f"{name_hint}: row subgroup {row.subgroup} is not a proper nonempty subset"
            )
    return Case(name, w0type, pres, subgroup, tuple(rows), tuple(checks))


CASE_NAMES = ("G12", "G22", "G24", "G27", "G29", "G31", "G33A4", "G33D4")

_cache: dict[str, Case] = {}


def catalog(name: str) -> Case:
    """The built-in case with the given name (one of CASE_NAMES)."""
    if name not in CASE_NAMES:
        raise ValueError(f"unknown case {name!r}; known: {', '.join(CASE_NAMES)}")
    if name not in _cache:
        path = resources.files("heckefree.data").joinpath(f"{name.lower()}.pres")
        _cache[name] = parse_case_text(path.read_text("utf-8"), name_hint=name)
    return _cache[name]
