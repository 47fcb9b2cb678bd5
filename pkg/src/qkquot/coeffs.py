"""Exact coefficient arithmetic.

Every coefficient lives in a sparse Laurent polynomial ring over Q in

* ``e^{varpi_1}, ..., e^{varpi_r}`` (the group algebra of P),
* ``q`` (only in q-mode),
* Novikov variables ``Q_1, ..., Q_r`` (only those indexed by J^c).

An exponent key is always a tuple of length ``2r + 1`` laid out as
``(weight_1..weight_r, q, novikov_1..novikov_r)``; the ring descriptor says
which slots may be nonzero.  Terms are ordered by ``(total degree, key)``,
which is a total order compatible with multiplication, so leading terms of
products are products of leading terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionError,
    ModeError,
    NotDivisibleError,
    ParseError,
    PreconditionError,
    RingMismatchError,
)

__all__ = [
    "CoeffRing",
    "LaurentPoly",
    "FracElt",
    "ExactMatrix",
    "LinearSolution",
    "QToOne",
    "NovikovProjection",
    "NovikovToZero",
    "DiagramRelabel",
    "specialize",
    "exact_divide",
    "normalize_fraction",
    "solve_linear",
    "parse_poly",
]


def _num(c):
    """Canonical rational: ints stay ints, integral Fractions become ints."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _key(e):
    return (sum(e), e)


def _weight_names(rank: int) -> list[str]:
    if rank <= 3:
        return list("xyz"[:rank])
    return [f"x{i}" for i in range(1, rank + 1)]


@dataclass(frozen=True)
class CoeffRing:
    """Descriptor of a coefficient ring.

    ``J`` lists the nodes whose Novikov variables are absent (specialized to
    one); ``localized`` permits negative Novikov exponents.
    """

    rank: int
    J: frozenset = frozenset()
    q_mode: bool = False
    localized: bool = True

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(int(j) for j in self.J))
        if any(not 1 <= j <= self.rank for j in self.J):
            raise PreconditionError(f"J={sorted(self.J)} outside 1..{self.rank}")

    @classmethod
    def group_algebra(cls, rank: int, q_mode: bool = False) -> "CoeffRing":
        """Ring with no Novikov variables: C[P] (or C_q P)."""
        return cls(rank, frozenset(range(1, rank + 1)), q_mode)

    @property
    def nvars(self) -> int:
        return 2 * self.rank + 1

    @property
    def novikov_nodes(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if i not in self.J)

    def with_(self, **changes) -> "CoeffRing":
        data = dict(rank=self.rank, J=self.J, q_mode=self.q_mode, localized=self.localized)
        data.update(changes)
        return CoeffRing(**data)

    def variable_names(self) -> list[str]:
        r = self.rank
        return _weight_names(r) + ["q"] + [f"Q{i}" for i in range(1, r + 1)]

    def check_key(self, e) -> None:
        r = self.rank
        if len(e) != 2 * r + 1:
            raise DimensionError(f"exponent of length {len(e)} in rank-{r} ring")
        if e[r] and not self.q_mode:
            raise ModeError("q exponent outside q-mode")
        for i in range(1, r + 1):
            c = e[r + i]
            if c and i in self.J:
                raise RingMismatchError(f"Novikov variable Q{i} is absent (J={sorted(self.J)})")
            if c < 0 and not self.localized:
                raise ModeError(f"negative exponent of Q{i} in an unlocalized ring")

    # -- constructors --------------------------------------------------------

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {}, _trusted=True)

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, c) -> "LaurentPoly":
        c = _num(Fraction(c))
        return LaurentPoly(self, {(0,) * self.nvars: c} if c else {}, _trusted=True)

    def monomial(self, weight=None, q: int = 0, novikov=None, coeff=1) -> "LaurentPoly":
        r = self.rank
        weight = tuple(weight) if weight is not None else (0,) * r
        novikov = tuple(novikov) if novikov is not None else (0,) * r
        if len(weight) != r or len(novikov) != r:
            raise DimensionError("monomial exponent has the wrong rank")
        coeff = _num(Fraction(coeff))
        if not coeff:
            return self.zero()
        return LaurentPoly(self, {weight + (q,) + novikov: coeff})

    def weight(self, lam) -> "LaurentPoly":
        """e^lambda for lambda in fundamental-weight coordinates."""
        return self.monomial(weight=lam)

    def novikov(self, beta) -> "LaurentPoly":
        """Q^beta for beta in simple-coroot coordinates."""
        return self.monomial(novikov=beta)

    def qpow(self, k: int) -> "LaurentPoly":
        return self.monomial(q=k)


class LaurentPoly:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: CoeffRing, terms: Mapping | None = None, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                c = _num(Fraction(c))
                if c:
                    ring.check_key(e)
                    clean[e] = clean.get(e, 0) + c
            self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- basic protocol ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * self.ring.nvars) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.ring.nvars in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _num(s)
            else:
                out.pop(e, None)
        return LaurentPoly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _num(Fraction(other))
            if not c:
                return self.ring.zero()
            return LaurentPoly(
                self.ring, {e: _num(v * c) for e, v in self.terms.items()}, _trusted=True
            )
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        res = {e: _num(c) for e, c in out.items() if c}
        return LaurentPoly(self.ring, res, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit (a monomial invertible in this ring)."""
        if not self.is_monomial():
            raise NotDivisibleError("only monomials are units")
        ((e, c),) = self.terms.items()
        return LaurentPoly(
            self.ring, {tuple(-x for x in e): _num(Fraction(1) / c)}
        )

    def shift(self, e) -> "LaurentPoly":
        """Multiply by the monomial with exponent key ``e``."""
        return LaurentPoly(
            self.ring,
            {tuple(x + y for x, y in zip(k, e)): c for k, c in self.terms.items()},
            _trusted=self.ring.localized,
        )

    # -- order and structure -------------------------------------------------

    def sorted_terms(self, reverse=False):
        return sorted(self.terms.items(), key=lambda t: _key(t[0]), reverse=reverse)

    def leading_term(self):
        e = max(self.terms, key=_key)
        return e, self.terms[e]

    def trailing_term(self):
        e = min(self.terms, key=_key)
        return e, self.terms[e]

    def min_exponents(self):
        """Componentwise minimum of exponent keys (monomial content)."""
        keys = list(self.terms)
        return tuple(min(col) for col in zip(*keys))

    def max_exponents(self):
        keys = list(self.terms)
        return tuple(max(col) for col in zip(*keys))

    def content(self) -> Fraction:
        """The leading coefficient; used to make denominators monic."""
        return self.leading_term()[1]

    def map_keys(self, ring: CoeffRing, fn) -> "LaurentPoly":
        """Apply ``fn`` to every exponent key, landing in ``ring``; sums collisions."""
        out: dict = {}
        for e, c in self.terms.items():
            k = fn(e)
            if k is None:
                continue
            out[k] = out.get(k, 0) + c
        return LaurentPoly(ring, out)

    def coerce(self, ring: CoeffRing) -> "LaurentPoly":
        """Re-read this element in another ring with the same key layout."""
        if ring.rank != self.ring.rank:
            raise DimensionError("rank mismatch")
        if ring == self.ring:
            return self
        return LaurentPoly(ring, self.terms)

    def split_novikov(self) -> dict:
        """Decompose into ``{novikov exponent: coefficient without Novikov part}``."""
        r = self.ring.rank
        target = CoeffRing.group_algebra(r, self.ring.q_mode)
        parts: dict = {}
        for e, c in self.terms.items():
            nov = e[r + 1:]
            parts.setdefault(nov, {})[e[: r + 1] + (0,) * r] = c
        return {nov: LaurentPoly(target, t, _trusted=True) for nov, t in parts.items()}

    def novikov_exponents(self):
        r = self.ring.rank
        return {e[r + 1:] for e in self.terms}

    def has_nonnegative_novikov(self) -> bool:
        r = self.ring.rank
        return all(x >= 0 for e in self.terms for x in e[r + 1:])

    # -- text ----------------------------------------------------------------

    def format(self) -> str:
        """Document grammar: ``c * x^a * y^b * q^k * Q1^m`` terms joined by `` + ``."""
        if not self.terms:
            return "0"
        names = self.ring.variable_names()
        chunks = []
        for e, c in self.sorted_terms():
            parts = [str(c)]
            for name, k in zip(names, e):
                if k == 1:
                    parts.append(name)
                elif k:
                    parts.append(f"{name}^{k}")
            chunks.append(" * ".join(parts))
        return " + ".join(chunks)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.variable_names()
        out = ""
        for n, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
            )
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if n == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"LaurentPoly({self.format()!r})"


def parse_poly(text: str, ring: CoeffRing) -> LaurentPoly:
    """Parse the coefficient grammar (also accepts ``-`` between terms)."""
    s = re.sub(r"\s+", "", text or "")
    if not s:
        raise ParseError("empty coefficient")
    names = {name: k for k, name in enumerate(ring.variable_names())}
    terms_txt = []
    start = 0
    for i in range(1, len(s)):
        if s[i] in "+-" and s[i - 1] not in "^*+-":
            terms_txt.append(s[start:i])
            start = i
    terms_txt.append(s[start:])
    out: dict = {}
    for chunk in terms_txt:
        sign = 1
        while chunk and chunk[0] in "+-":
            sign = -sign if chunk[0] == "-" else sign
            chunk = chunk[1:]
        if not chunk:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = Fraction(sign)
        exp = [0] * ring.nvars
        for factor in chunk.split("*"):
            m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", factor)
            if m:
                coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
                continue
            m = re.fullmatch(r"([A-Za-z]\w*)(?:\^(-?\d+))?", factor)
            if not m or m.group(1) not in names:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            exp[names[m.group(1)]] += int(m.group(2) or 1)
        e = tuple(exp)
        try:
            ring.check_key(e)
        except (ModeError, RingMismatchError, DimensionError) as exc:
            raise ParseError(f"{text!r}: {exc}") from exc
        out[e] = out.get(e, 0) + coeff
    return LaurentPoly(ring, out)


# -- exact division ------------------------------------------------------------


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``c`` with ``a == b * c`` or raise NotDivisibleError."""
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = a.ring
    if a.is_zero():
        return ring.zero()
    if b.is_monomial():
        ((eb, cb),) = b.terms.items()
        out = {
            tuple(x - y for x, y in zip(e, eb)): _num(Fraction(c) / cb)
            for e, c in a.terms.items()
        }
        try:
            return LaurentPoly(ring, out, _trusted=ring.localized)
        except ModeError as exc:
            raise NotDivisibleError(str(exc)) from exc
    lead_b, lc_b = b.leading_term()
    # every exponent of an exact quotient lies in this box, so the loop is finite
    lo = tuple(x - y for x, y in zip(a.min_exponents(), b.min_exponents()))
    hi = tuple(x - y for x, y in zip(a.max_exponents(), b.max_exponents()))
    rem = dict(a.terms)
    quot: dict = {}
    bterms = list(b.terms.items())
    while rem:
        lead = max(rem, key=_key)
        e = tuple(x - y for x, y in zip(lead, lead_b))
        if any(x < l or x > h for x, l, h in zip(e, lo, hi)):
            raise NotDivisibleError("nonzero remainder")
        c = Fraction(rem[lead]) / lc_b
        quot[e] = _num(c)
        for eb, cb in bterms:
            k = tuple(x + y for x, y in zip(e, eb))
            v = rem.get(k, 0) - c * cb
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    try:
        return LaurentPoly(ring, quot)
    except ModeError as exc:
        raise NotDivisibleError(str(exc)) from exc


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    try:
        exact_divide(a, b)
    except NotDivisibleError:
        return False
    return True


# -- fractions -----------------------------------------------------------------


class FracElt:
    """Element of the fraction field; equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = num.ring.one()
        if num.ring != den.ring:
            raise RingMismatchError(f"{num.ring} vs {den.ring}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @property
    def ring(self) -> CoeffRing:
        return self.num.ring

    @classmethod
    def lift(cls, x, ring: CoeffRing | None = None) -> "FracElt":
        if isinstance(x, FracElt):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        if ring is None:
            raise TypeError(f"cannot lift {x!r} without a ring")
        return cls(ring.const(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one() or divides(self.den, self.num)

    def to_poly(self) -> LaurentPoly:
        """The polynomial this fraction equals; NotDivisibleError otherwise."""
        if self.den.is_one():
            return self.num
        return exact_divide(self.num, self.den)

    def _other(self, other):
        if isinstance(other, FracElt):
            return other
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return FracElt.lift(other, self.ring)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return FracElt(self.num + other.num, self.den)
        return FracElt(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FracElt(-self.num, self.den)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if other.den.is_one():
            return FracElt(self.num * other.num, self.den)
        if self.den.is_one():
            return FracElt(self.num * other.num, other.den)
        return FracElt(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        return FracElt(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._other(other)
        return other / self

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("FracElt is unhashable; compare with ==")

    def normalized(self) -> "FracElt":
        return normalize_fraction(self)

    def format(self) -> str:
        if self.den.is_one():
            return self.num.format()
        return f"({self.num.format()}) / ({self.den.format()})"

    def __str__(self):
        if self.den.is_one():
            return self.num.pretty()
        return f"({self.num.pretty()})/({self.den.pretty()})"

    def __repr__(self):
        return f"FracElt({self.format()!r})"


def normalize_fraction(f: FracElt) -> FracElt:
    """Strip monomial and rational content; make the denominator's leading coefficient 1."""
    ring = f.ring
    if f.num.is_zero():
        return FracElt(ring.zero(), ring.one())
    r = ring.rank
    dmin = f.den.min_exponents()
    nmin = f.num.min_exponents()
    shift = []
    for k in range(ring.nvars):
        invertible = k <= r or ring.localized
        if invertible:
            shift.append(-dmin[k])
        else:
            shift.append(-min(dmin[k], nmin[k]))
    shift = tuple(shift)
    num, den = f.num.shift(shift), f.den.shift(shift)
    if den.is_monomial() or len(den) <= len(num):
        try:
            return FracElt(exact_divide(num, den), ring.one())
        except NotDivisibleError:
            pass
    lc = den.content()
    if lc != 1:
        inv = Fraction(1) / lc
        num, den = num * inv, den * inv
    return FracElt(num, den)


# -- specializations -----------------------------------------------------------


@dataclass(frozen=True)
class QToOne:
    """q -> 1."""


@dataclass(frozen=True)
class NovikovProjection:
    """Q^beta -> Q^{[beta]_J}; i.e. Q_i -> 1 for i in J."""

    J: frozenset


@dataclass(frozen=True)
class NovikovToZero:
    """Q_i -> 0 for the listed nodes (all nodes when empty)."""

    nodes: frozenset = frozenset()


@dataclass(frozen=True)
class DiagramRelabel:
    """e^lambda -> e^{sigma lambda}, Q_i -> Q_{sigma(i)} for a node permutation."""

    sigma: Mapping = field(default_factory=dict)


def specialize(a: LaurentPoly, spec) -> LaurentPoly:
    """Apply one of the ring homomorphisms above."""
    ring = a.ring
    r = ring.rank
    if isinstance(spec, QToOne):
        target = ring.with_(q_mode=False)
        return a.map_keys(target, lambda e: e[:r] + (0,) + e[r + 1:])
    if isinstance(spec, NovikovProjection):
        J = frozenset(int(j) for j in spec.J)
        if any(not 1 <= j <= r for j in J):
            raise PreconditionError(f"nodes {sorted(J)} outside 1..{r}")
        target = ring.with_(J=ring.J | J)
        return a.map_keys(
            target,
            lambda e: e[: r + 1] + tuple(0 if i + 1 in J else x for i, x in enumerate(e[r + 1:])),
        )
    if isinstance(spec, NovikovToZero):
        nodes = frozenset(spec.nodes) or frozenset(range(1, r + 1))
        if any(not 1 <= j <= r for j in nodes):
            raise PreconditionError(f"nodes {sorted(nodes)} outside 1..{r}")

        def drop(e):
            for i in nodes:
                x = e[r + i]
                if x < 0:
                    raise ModeError("cannot set Q to 0 in a term with negative exponent")
                if x > 0:
                    return None
            return e

        return a.map_keys(ring, drop)
    if isinstance(spec, DiagramRelabel):
        s = {int(k): int(v) for k, v in dict(spec.sigma).items()}
        for i in range(1, r + 1):
            s.setdefault(i, i)
        if sorted(s) != list(range(1, r + 1)) or sorted(s.values()) != list(range(1, r + 1)):
            raise PreconditionError(f"{spec.sigma!r} is not a permutation of 1..{r}")
        target = ring.with_(J=frozenset(s[j] for j in ring.J))

        def perm(e):
            w = [0] * r
            n = [0] * r
            for i in range(r):
                w[s[i + 1] - 1] = e[i]
                n[s[i + 1] - 1] = e[r + 1 + i]
            return tuple(w) + (e[r],) + tuple(n)

        return a.map_keys(target, perm)
    raise PreconditionError(f"unknown specialization {spec!r}")


# -- matrices and linear solving -----------------------------------------------


class ExactMatrix:
    """Dense matrix of FracElt entries."""

    def __init__(self, entries: Sequence[Sequence], ring: CoeffRing):
        self.ring = ring
        self.entries = tuple(tuple(FracElt.lift(x, ring) for x in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(row) != self.cols for row in self.entries):
            raise DimensionError("ragged matrix")
        if any(x.ring != ring for row in self.entries for x in row):
            raise RingMismatchError("matrix entry from another ring")

    @classmethod
    def identity(cls, n: int, ring: CoeffRing) -> "ExactMatrix":
        return cls([[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)], ring)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], ring: CoeffRing) -> "ExactMatrix":
        if not columns:
            return cls([], ring)
        n = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(n)], ring)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[FracElt]:
        return [row[j] for row in self.entries]

    def apply(self, vec: Sequence) -> list[FracElt]:
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} for {self.cols} columns")
        vec = [FracElt.lift(v, self.ring) for v in vec]
        out = []
        for row in self.entries:
            acc = FracElt(self.ring.zero())
            for a, v in zip(row, vec):
                if not a.is_zero() and not v.is_zero():
                    acc = acc + a * v
            out.append(acc)
        return out

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in matrix product")
        cols = [self.apply(other.column(j)) for j in range(other.cols)]
        return ExactMatrix.from_columns(cols, self.ring) if cols else ExactMatrix([[]] * self.rows, self.ring)

    def __add__(self, other):
        return ExactMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.ring,
        )

    def __sub__(self, other):
        return ExactMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.ring,
        )

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)
        )

    __hash__ = None

    def normalized(self) -> "ExactMatrix":
        return ExactMatrix([[normalize_fraction(x) for x in row] for row in self.entries], self.ring)

    def is_polynomial(self) -> bool:
        return all(x.is_polynomial() for row in self.entries for x in row)

    def poly_entries(self) -> list[list[LaurentPoly]]:
        return [[x.to_poly() for x in row] for row in self.entries]

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


@dataclass
class LinearSolution:
    """Outcome of :func:`solve_linear`.

    ``status`` is ``"unique"``, ``"underdetermined"`` (``x`` is the particular
    solution with free unknowns set to zero) or ``"inconsistent"`` (``x`` is
    None and ``certificate`` holds the eliminated row index and its nonzero
    right-hand side).
    """

    status: str
    x: list | None
    rank: int
    pivots: tuple = ()
    certificate: tuple | None = None
    numerators: list | None = None
    denominator: LaurentPoly | None = None

    @property
    def solvable(self) -> bool:
        return self.status != "inconsistent"


def _clear_row(row: Sequence[FracElt], ring) -> list[LaurentPoly]:
    dens = []
    for x in row:
        if not x.den.is_one() and not any(x.den == d for d in dens):
            dens.append(x.den)
    if not dens:
        return [x.num for x in row]
    out = []
    for x in row:
        factor = ring.one()
        skipped = False
        for d in dens:
            if not skipped and d == x.den:
                skipped = True
                continue
            factor = factor * d
        out.append(x.num * factor)
    return out


def solve_linear(M: ExactMatrix, rhs: Sequence) -> LinearSolution:
    """Solve ``M x = rhs`` exactly by fraction-free (Bareiss) elimination.

    Pivots are chosen among all remaining nonzero entries (fewest terms first),
    with row and column swaps.  Any returned solution has been re-verified by
    multiplying it back through ``M``.
    """
    n, m = M.rows, M.cols
    if n == 0 or m == 0:
        raise DimensionError("empty matrix")
    if len(rhs) != n:
        raise DimensionError(f"rhs of length {len(rhs)} for {n} rows")
    ring = M.ring
    rhs_f = [FracElt.lift(b, ring) for b in rhs]
    A = [_clear_row(list(M.entries[i]) + [rhs_f[i]], ring) for i in range(n)]
    perm = list(range(m))
    prev = ring.one()
    rank = 0
    for k in range(min(n, m)):
        best = None
        for i in range(k, n):
            for j in range(k, m):
                x = A[i][j]
                if x and (best is None or len(x) < best[0]):
                    best = (len(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        A[k], A[pi] = A[pi], A[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            perm[k], perm[pj] = perm[pj], perm[k]
        p = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, m + 1):
                val = p * A[i][j]
                if aik and A[k][j]:
                    val = val - aik * A[k][j]
                A[i][j] = exact_divide(val, prev) if not prev.is_one() else val
            A[i][k] = ring.zero()
        prev = p
        rank += 1
    for i in range(rank, n):
        if A[i][m]:
            return LinearSolution("inconsistent", None, rank, tuple(perm[:rank]), (i, A[i][m]))
    D = A[rank - 1][rank - 1] if rank else ring.one()
    N = [ring.zero()] * rank
    for k in range(rank - 1, -1, -1):
        acc = D * A[k][m]
        for j in range(k + 1, rank):
            if A[k][j] and N[j]:
                acc = acc - A[k][j] * N[j]
        N[k] = exact_divide(acc, A[k][k])
    x = [FracElt(ring.zero())] * m
    nums = [ring.zero()] * m
    for k in range(rank):
        x[perm[k]] = normalize_fraction(FracElt(N[k], D))
        nums[perm[k]] = N[k]
    check = M.apply(x)
    if any(not (c == b) for c, b in zip(check, rhs_f)):
        raise AssertionError("solve_linear produced a solution that does not verify")
    status = "unique" if rank == m else "underdetermined"
    return LinearSolution(status, x, rank, tuple(perm[:rank]), None, nums, D)
