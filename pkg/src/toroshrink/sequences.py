"""Defining sequences of chain links, and the restricted symbolic terms
used to describe them.

A decomposition of the 3-sphere is specified by the sequence of links
glued in at each stage; here every stage is an (n,m) chain link, so a
sequence is just i -> (n_i, m_i).  Four variants are supported: periodic,
eventually periodic, closed-form (integer polynomials in the index, with
an even/odd split), and explicit finite data with an unknown tail.

The polynomial grammar is deliberately small: integer constants, one
variable, +, -, *, ^.  Positivity of a polynomial from an index onward is
decidable exactly (evaluate up to a coefficient bound past which the
leading term dominates), which keeps every certificate symbolic rather
than numeric sampling.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linkio import NMLinkSpec

__all__ = [
    "IntPoly",
    "parse_poly",
    "LinkSequence",
    "PeriodicSequence",
    "EventuallyPeriodicSequence",
    "GeneratorSequence",
    "ExplicitSequence",
    "GapSequence",
    "HorizonError",
    "SequenceError",
    "parse_sequence_config",
    "sequence_to_config",
    "tau",
]


class SequenceError(ValueError):
    pass


class HorizonError(LookupError):
    """The sequence is not known at the requested index."""


# -- integer polynomials -----------------------------------------------------


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, ascending order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def var(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __call__(self, i: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * i + c
        return out

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    def scaled(self, c: int) -> "IntPoly":
        return IntPoly(tuple(c * x for x in self.coeffs))

    def shifted_arg(self, delta: int) -> "IntPoly":
        """p(i + delta) as a polynomial in i."""
        out = IntPoly.const(0)
        shift = IntPoly((delta, 1))
        power = IntPoly.const(1)
        for c in self.coeffs:
            out = out + power.scaled(c)
            power = power * shift
        return out

    def ge_from(self, bound: int, i_min: int) -> tuple[bool, int | None]:
        """Decide p(i) >= bound for every integer i >= i_min, exactly.

        Returns (True, None) or (False, first violating index >= i_min).
        Beyond B = i_min-or-coefficient-bound the leading term dominates,
        so checking up to B is a complete decision procedure.
        """
        p = self - IntPoly.const(bound)
        if p.is_zero():
            return (True, None)
        if p.is_constant():
            return (p.coeffs[0] >= 0, None if p.coeffs[0] >= 0 else i_min)
        lead = p.coeffs[-1]
        lower = sum(abs(c) for c in p.coeffs[:-1])
        dominance = 1 + (lower + 1 + abs(lead) - 1) // abs(lead)
        limit = max(i_min, dominance)
        for i in range(i_min, limit + 1):
            if p(i) < 0:
                return (False, i)
        if lead > 0:
            return (True, None)
        # negative leading term: a violation is guaranteed past the bound
        i = limit + 1
        while p(i) >= 0:  # pragma: no cover - dominance bound makes this rare
            i += 1
        return (False, i)

    def divide_exact(self, other: "IntPoly") -> "IntPoly | None":
        """self / other when the quotient is a polynomial with integer
        coefficients; None otherwise."""
        if other.is_zero():
            return None
        if self.is_zero():
            return IntPoly(())
        if self.degree < other.degree:
            return None
        rem = list(self.coeffs)
        den = other.coeffs
        q = [0] * (len(rem) - len(den) + 1)
        for k in range(len(q) - 1, -1, -1):
            num = rem[k + len(den) - 1]
            if num % den[-1]:
                return None
            q[k] = num // den[-1]
            for j, d in enumerate(den):
                rem[k + j] -= q[k] * d
        if any(rem):
            return None
        return IntPoly(tuple(q))

    def text(self, var: str = "i") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                body = str(abs(c))
            else:
                v = var if e == 1 else f"{var}^{e}"
                body = v if abs(c) == 1 else f"{abs(c)}*{v}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


_POLY_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]|\^|\*|\+|-|\(|\))")


def parse_poly(text: str) -> IntPoly:
    """Parse the restricted arithmetic grammar into a polynomial.

    Accepts integer constants, a single variable letter, +, -, *, ^ and
    parentheses, e.g. "2*s^2" or "(s+1)^2".
    """
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _POLY_TOKEN.match(text, pos)
        if not m:
            raise SequenceError(f"bad character in term {text!r} at {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append("$")
    state = {"i": 0, "var": None}

    def peek():
        return tokens[state["i"]]

    def take():
        t = tokens[state["i"]]
        state["i"] += 1
        return t

    def atom() -> IntPoly:
        t = take()
        if t == "(":
            p = expr()
            if take() != ")":
                raise SequenceError(f"unbalanced parentheses in {text!r}")
        elif t.isdigit():
            p = IntPoly.const(int(t))
        elif t.isalpha():
            if state["var"] is None:
                state["var"] = t
            elif state["var"] != t:
                raise SequenceError(f"two variables {state['var']!r}, {t!r} in {text!r}")
            p = IntPoly.var()
        else:
            raise SequenceError(f"unexpected token {t!r} in {text!r}")
        if peek() == "^":
            take()
            e = take()
            if not e.isdigit():
                raise SequenceError(f"exponent must be a constant in {text!r}")
            out = IntPoly.const(1)
            for _ in range(int(e)):
                out = out * p
            p = out
        return p

    def term() -> IntPoly:
        p = atom()
        while peek() == "*":
            take()
            p = p * atom()
        return p

    def expr() -> IntPoly:
        sign = 1
        if peek() in "+-":
            sign = -1 if take() == "-" else 1
        p = term().scaled(sign)
        while peek() in "+-":
            s = -1 if take() == "-" else 1
            p = p + term().scaled(s)
        return p

    out = expr()
    if take() != "$":
        raise SequenceError(f"trailing tokens in {text!r}")
    return out


# -- link sequences -----------------------------------------------------------


def tau(spec: NMLinkSpec) -> Fraction:
    """The width-to-winding ratio n/(2m) of one chain link."""
    return Fraction(spec.n, 2 * spec.m)


class LinkSequence:
    """Interface: link(i) for i >= 1, known_bound() (None = total)."""

    def link(self, i: int) -> NMLinkSpec:  # pragma: no cover
        raise NotImplementedError

    def known_bound(self) -> int | None:
        return None

    def tau(self, i: int) -> Fraction:
        return tau(self.link(i))


def _coerce_specs(links: Sequence) -> tuple[NMLinkSpec, ...]:
    out = []
    for item in links:
        if isinstance(item, NMLinkSpec):
            out.append(item)
        elif isinstance(item, (tuple, list)) and len(item) == 2:
            out.append(NMLinkSpec(int(item[0]), int(item[1])))
        else:
            raise SequenceError(f"not an (n,m) link spec: {item!r}")
    return tuple(out)


@dataclass(frozen=True)
class PeriodicSequence(LinkSequence):
    links: tuple[NMLinkSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "links", _coerce_specs(self.links))
        if not self.links:
            raise SequenceError("period must contain at least one link")

    @property
    def period(self) -> int:
        return len(self.links)

    def link(self, i: int) -> NMLinkSpec:
        if i < 1:
            raise SequenceError("sequence indices start at 1")
        return self.links[(i - 1) % self.period]


@dataclass(frozen=True)
class EventuallyPeriodicSequence(LinkSequence):
    prefix: tuple[NMLinkSpec, ...]
    tail: tuple[NMLinkSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", _coerce_specs(self.prefix))
        object.__setattr__(self, "tail", _coerce_specs(self.tail))
        if not self.tail:
            raise SequenceError("periodic tail must contain at least one link")

    def link(self, i: int) -> NMLinkSpec:
        if i < 1:
            raise SequenceError("sequence indices start at 1")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail[(i - len(self.prefix) - 1) % len(self.tail)]


@dataclass(frozen=True)
class GeneratorSequence(LinkSequence):
    """Closed-form sequence: either n(i), m(i) for all i >= 1, or separate
    forms for even index i = 2s (s >= 1) and odd index i = 2s+1 (s >= 0).

    Positivity n(i) >= 1 and m(i) >= 1 over the whole domain is checked
    exactly at construction time.
    """

    n_poly: IntPoly | None = None
    m_poly: IntPoly | None = None
    even_n: IntPoly | None = None
    even_m: IntPoly | None = None
    odd_n: IntPoly | None = None
    odd_m: IntPoly | None = None

    def __post_init__(self):
        if self.n_poly is not None:
            checks = [(self.n_poly, 1, "n"), (self.m_poly, 1, "m")]
        else:
            if None in (self.even_n, self.even_m, self.odd_n, self.odd_m):
                raise SequenceError("two-case generator needs all four terms")
            checks = [
                (self.even_n, 1, "even n"),
                (self.even_m, 1, "even m"),
                (self.odd_n, 0, "odd n"),
                (self.odd_m, 0, "odd m"),
            ]
        for poly, start, name in checks:
            if poly is None:
                raise SequenceError("generator needs both n and m terms")
            ok, witness = poly.ge_from(1, start)
            if not ok:
                raise SequenceError(
                    f"{name} term is not >= 1 at index {witness}"
                )

    @property
    def two_case(self) -> bool:
        return self.n_poly is None

    def link(self, i: int) -> NMLinkSpec:
        if i < 1:
            raise SequenceError("sequence indices start at 1")
        if not self.two_case:
            return NMLinkSpec(self.n_poly(i), self.m_poly(i))
        if i % 2 == 0:
            s = i // 2
            return NMLinkSpec(self.even_n(s), self.even_m(s))
        s = (i - 1) // 2
        return NMLinkSpec(self.odd_n(s), self.odd_m(s))


@dataclass(frozen=True)
class ExplicitSequence(LinkSequence):
    """A finite known prefix; nothing is declared about the tail."""

    links: tuple[NMLinkSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "links", _coerce_specs(self.links))
        if not self.links:
            raise SequenceError("explicit sequence needs at least one link")

    def known_bound(self) -> int | None:
        return len(self.links)

    def link(self, i: int) -> NMLinkSpec:
        if i < 1:
            raise SequenceError("sequence indices start at 1")
        if i > len(self.links):
            raise HorizonError(f"link {i} beyond the declared data")
        return self.links[i - 1]


# -- gap sequences for mixed Bing-Whitehead decompositions --------------------


@dataclass(frozen=True)
class GapSequence:
    """Counts c_i of (2,1) chain stages between consecutive (1,1) stages.

    kind: 'periodic' (values cycle), 'poly' (c(i) closed form), 'two_pow'
    (c(i) = a*2^i + p(i)), or 'explicit' (finite prefix, unknown tail).
    """

    kind: str
    values: tuple[int, ...] = ()
    poly: IntPoly | None = None
    two_pow_coeff: int = 0

    def __post_init__(self):
        if self.kind not in ("periodic", "poly", "two_pow", "explicit"):
            raise SequenceError(f"unknown gap kind {self.kind!r}")
        if self.kind in ("periodic", "explicit"):
            if not self.values:
                raise SequenceError("gap values required")
            if any(v < 0 for v in self.values):
                raise SequenceError("gap counts must be nonnegative")
        if self.kind == "poly":
            ok, witness = self.poly.ge_from(0, 1)
            if not ok:
                raise SequenceError(f"gap term is negative at index {witness}")
        if self.kind == "two_pow":
            if self.two_pow_coeff < 1:
                raise SequenceError("2^i coefficient must be >= 1")
            extra = self.poly if self.poly is not None else IntPoly(())
            ok, witness = extra.ge_from(0, 1)
            if not ok:
                raise SequenceError(
                    f"2^i gap forms need a nonnegative remainder term "
                    f"(negative at index {witness})"
                )

    @classmethod
    def periodic(cls, values) -> "GapSequence":
        return cls(kind="periodic", values=tuple(int(v) for v in values))

    @classmethod
    def from_poly(cls, poly: IntPoly | str) -> "GapSequence":
        if isinstance(poly, str):
            poly = parse_poly(poly)
        return cls(kind="poly", poly=poly)

    @classmethod
    def two_pow(cls, coeff: int = 1, extra: IntPoly | None = None) -> "GapSequence":
        return cls(kind="two_pow", two_pow_coeff=coeff, poly=extra)

    @classmethod
    def explicit(cls, values) -> "GapSequence":
        return cls(kind="explicit", values=tuple(int(v) for v in values))

    @classmethod
    def from_positions(cls, positions) -> "GapSequence":
        """Explicit gaps from the increasing positions of the (1,1) stages."""
        ws = [int(w) for w in positions]
        if any(b <= a for a, b in zip(ws, ws[1:])) or (ws and ws[0] < 1):
            raise SequenceError("positions must be strictly increasing and >= 1")
        gaps = []
        prev = 0
        for w in ws:
            gaps.append(w - prev - 1)
            prev = w
        return cls.explicit(gaps)

    def gap(self, i: int) -> int:
        if i < 1:
            raise SequenceError("gap indices start at 1")
        if self.kind == "periodic":
            return self.values[(i - 1) % len(self.values)]
        if self.kind == "poly":
            return self.poly(i)
        if self.kind == "two_pow":
            extra = self.poly(i) if self.poly is not None else 0
            return self.two_pow_coeff * 2**i + extra
        if i > len(self.values):
            raise HorizonError(f"gap {i} beyond the declared data")
        return self.values[i - 1]

    def term(self, i: int) -> Fraction:
        """c_i / 2^i, the decisive series term."""
        return Fraction(self.gap(i), 2**i)


# -- config parsing ------------------------------------------------------------


_LINK_ALIASES = {
    "bing": (2, 1),
    "whitehead": (1, 1),
}
_NM_STRING = re.compile(r"nm\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def _parse_link_entry(entry) -> NMLinkSpec:
    if isinstance(entry, str):
        key = entry.strip().lower()
        if key in _LINK_ALIASES:
            return NMLinkSpec(*_LINK_ALIASES[key])
        m = _NM_STRING.match(key)
        if m:
            return NMLinkSpec(int(m.group(1)), int(m.group(2)))
        raise SequenceError(f"unknown link entry {entry!r}")
    if isinstance(entry, dict) and "nm" in entry:
        n, m = entry["nm"]
        return NMLinkSpec(int(n), int(m))
    raise SequenceError(f"bad link entry {entry!r}")


def parse_sequence_config(config) -> LinkSequence:
    """Build a LinkSequence from a JSON string or a parsed config dict."""
    if isinstance(config, str):
        config = json.loads(config)
    if not isinstance(config, dict) or "variant" not in config:
        raise SequenceError("sequence config must be an object with a 'variant'")
    variant = config["variant"]
    if variant == "periodic":
        return PeriodicSequence(tuple(_parse_link_entry(e) for e in config["links"]))
    if variant == "eventually_periodic":
        return EventuallyPeriodicSequence(
            prefix=tuple(_parse_link_entry(e) for e in config.get("prefix", [])),
            tail=tuple(_parse_link_entry(e) for e in config["period"]),
        )
    if variant == "explicit":
        return ExplicitSequence(tuple(_parse_link_entry(e) for e in config["links"]))
    if variant == "generator":
        if "even" in config or "odd" in config:
            even, odd = config["even"], config["odd"]
            return GeneratorSequence(
                even_n=parse_poly(str(even["n"])),
                even_m=parse_poly(str(even["m"])),
                odd_n=parse_poly(str(odd["n"])),
                odd_m=parse_poly(str(odd["m"])),
            )
        return GeneratorSequence(
            n_poly=parse_poly(str(config["n"])),
            m_poly=parse_poly(str(config["m"])),
        )
    raise SequenceError(f"unknown sequence variant {variant!r}")


def sequence_to_config(seq: LinkSequence) -> dict:
    """Inverse of parse_sequence_config, for verdict echoes and reports."""
    if isinstance(seq, PeriodicSequence):
        return {
            "variant": "periodic",
            "links": [{"nm": [l.n, l.m]} for l in seq.links],
        }
    if isinstance(seq, EventuallyPeriodicSequence):
        return {
            "variant": "eventually_periodic",
            "prefix": [{"nm": [l.n, l.m]} for l in seq.prefix],
            "period": [{"nm": [l.n, l.m]} for l in seq.tail],
        }
    if isinstance(seq, ExplicitSequence):
        return {
            "variant": "explicit",
            "links": [{"nm": [l.n, l.m]} for l in seq.links],
        }
    if isinstance(seq, GeneratorSequence):
        if seq.two_case:
            return {
                "variant": "generator",
                "even": {"n": seq.even_n.text("s"), "m": seq.even_m.text("s")},
                "odd": {"n": seq.odd_n.text("s"), "m": seq.odd_m.text("s")},
            }
        return {
            "variant": "generator",
            "n": seq.n_poly.text("i"),
            "m": seq.m_poly.text("i"),
        }
    raise SequenceError(f"cannot serialize {seq!r}")
