"""Formal K-modules with Schubert/Novikov bases.

A :class:`ModuleSpace` is the free module over ``C[P] (x) C[Q^v_J]`` with
basis indexed by the minimal coset representatives of ``W/W_J``.  A
:class:`KClass` stores one coefficient per representative; the Novikov part
lives inside the coefficient, so ``[O(u)] Q^beta`` is the basis vector ``u``
times the monomial ``Q^beta``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .coeffs import CoeffRing, FracElt, LaurentPoly, NovikovProjection, parse_poly, specialize
from .errors import (
    DimensionError,
    ModeError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    SchemaError,
)
from .rootsys import Coroot, RootSystem, normalize_J, root_system
from .weyl import (
    AffineWeylElt,
    CosetSpace,
    WeylElt,
    coset_space,
    min_coset_rep,
    parse_finite,
    weyl_group,
)

__all__ = [
    "ModuleSpace",
    "KClass",
    "SemiInfiniteClass",
    "module_space",
    "psi",
    "psi_inverse",
    "phi_J",
    "k_i_membership",
    "in_kernel",
    "kernel_generator",
    "q_shift",
]


class ModuleSpace:
    """Basis ``(rep in W/W_J) x (Novikov exponent on J^c)``."""

    def __init__(self, rs: RootSystem, J: Iterable[int] = (), q_mode: bool = False,
                 localized: bool = True):
        self.rs = rs
        self.group = weyl_group(rs)
        self.J = normalize_J(J, rs.rank)
        self.cosets: CosetSpace = coset_space(self.group, self.J)
        self.q_mode = bool(q_mode)
        self.localized = bool(localized)
        self.ring = CoeffRing(rs.rank, self.J, self.q_mode, self.localized)
        self.scalars = CoeffRing.group_algebra(rs.rank, self.q_mode)

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def dim(self) -> int:
        return len(self.cosets.reps)

    @property
    def reps(self) -> tuple:
        return self.cosets.reps

    @property
    def type_name(self) -> str:
        return self.rs.name

    def _key(self):
        return (id(self.rs), self.J, self.q_mode, self.localized)

    def __eq__(self, other):
        return isinstance(other, ModuleSpace) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"ModuleSpace({self.rs.name}, J={sorted(self.J)}, q_mode={self.q_mode}, "
                f"localized={self.localized})")

    def with_(self, J=None, q_mode=None, localized=None) -> "ModuleSpace":
        return module_space(
            self.rs,
            self.J if J is None else J,
            self.q_mode if q_mode is None else q_mode,
            self.localized if localized is None else localized,
        )

    def rep_id(self, u: WeylElt) -> int:
        """Index of a minimal coset representative; rejects non-representatives."""
        k = self.cosets.index.get(u.images)
        if k is None:
            raise PreconditionError(f"{u} is not a minimal representative for J={sorted(self.J)}")
        return k

    def coerce_coeff(self, c) -> LaurentPoly:
        if isinstance(c, LaurentPoly):
            if c.ring == self.ring:
                return c
            if c.ring.rank != self.rank:
                raise RingMismatchError(f"rank-{c.ring.rank} coefficient in rank-{self.rank} space")
            return c.coerce(self.ring)
        return self.ring.const(c)

    def novikov(self, beta) -> LaurentPoly:
        beta = tuple(beta)
        if len(beta) != self.rank:
            raise DimensionError(f"Novikov exponent {beta} for rank {self.rank}")
        return self.ring.novikov(beta)

    def zero(self) -> "KClass":
        z = self.ring.zero()
        return KClass(self, (z,) * self.dim)

    def basis(self, u, beta=None, coeff=1) -> "KClass":
        """``coeff * [O(u)] Q^beta``; ``u`` may be a word or element (must be a representative)."""
        if isinstance(u, str):
            u = parse_finite(u, self.group)
        k = self.rep_id(u)
        c = self.coerce_coeff(coeff)
        if beta is not None:
            c = c * self.novikov(beta)
        vec = [self.ring.zero()] * self.dim
        vec[k] = c
        return KClass(self, tuple(vec))

    def identity(self) -> "KClass":
        return self.basis(self.group.identity)

    def from_vector(self, vec) -> "KClass":
        """Build a class from a coefficient vector of polynomials or polynomial fractions."""
        if len(vec) != self.dim:
            raise DimensionError(f"vector of length {len(vec)} for dimension {self.dim}")
        out = []
        for c in vec:
            if isinstance(c, FracElt):
                c = c.to_poly()
            out.append(self.coerce_coeff(c))
        return KClass(self, tuple(out))

    def all_basis(self) -> list:
        return [self.basis(u) for u in self.reps]


@lru_cache(maxsize=None)
def _module_space(rs, J, q_mode, localized):
    return ModuleSpace(rs, J, q_mode, localized)


def module_space(rs, J=(), q_mode=False, localized=True) -> ModuleSpace:
    """Cached constructor; equal descriptors share one instance."""
    if not isinstance(rs, RootSystem):
        rs = root_system(rs)
    return _module_space(rs, normalize_J(J, rs.rank), bool(q_mode), bool(localized))


class KClass:
    """Immutable element of a :class:`ModuleSpace`."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: ModuleSpace, coeffs: tuple):
        if len(coeffs) != space.dim:
            raise DimensionError("coefficient vector does not match the basis")
        for c in coeffs:
            if c.ring != space.ring:
                raise RingMismatchError(f"coefficient in {c.ring}, space ring {space.ring}")
        self.space = space
        self.coeffs = tuple(coeffs)

    # -- structure -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        """``{(rep id, Novikov exponent): group-algebra coefficient}`` (no zeros)."""
        out = {}
        for k, c in enumerate(self.coeffs):
            for nov, g in c.split_novikov().items():
                out[(k, nov)] = g
        return out

    def coefficient(self, u) -> LaurentPoly:
        if isinstance(u, str):
            u = parse_finite(u, self.space.group)
        return self.coeffs[self.space.rep_id(u)]

    def support(self) -> list:
        return [self.space.reps[k] for k, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if not isinstance(other, KClass):
            return False
        if other.space != self.space:
            raise RingMismatchError(f"{self.space} vs {other.space}")
        return True

    def __eq__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return self.space == other.space and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.space, self.coeffs))

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return KClass(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return KClass(self.space, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return KClass(self.space, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar):
        if isinstance(scalar, KClass):
            return NotImplemented
        s = self.space.coerce_coeff(scalar)
        return KClass(self.space, tuple(a * s for a in self.coeffs))

    __rmul__ = __mul__

    # -- rendering -----------------------------------------------------------

    def _sorted_terms(self):
        items = self.terms.items()
        return sorted(items, key=lambda t: (t[0][0], sum(t[0][1]), t[0][1]))

    def to_doc(self) -> dict:
        reps = self.space.reps
        return {
            "type": self.space.type_name,
            "J": sorted(self.space.J),
            "terms": [
                {"coeff": g.format(), "weyl": str(reps[k]), "novikov": list(nov)}
                for (k, nov), g in self._sorted_terms()
            ],
        }

    def pretty(self) -> str:
        if self.is_zero():
            return "0"
        reps = self.space.reps
        chunks = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            label = f"[{reps[k]}]"
            if c.is_monomial():
                ((e, v),) = c.terms.items()
                sign = "-" if v < 0 else "+"
                mono = LaurentPoly(c.ring, {e: abs(v)}, _trusted=True).pretty()
                body = label if mono == "1" else f"{mono}*{label}"
            else:
                sign = "+"
                body = f"({c.pretty()})*{label}"
            chunks.append((sign, body))
        out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"KClass({self.pretty()})"

    @classmethod
    def from_doc(cls, doc: Mapping, space: ModuleSpace | None = None) -> "KClass":
        try:
            type_name, J, terms = doc["type"], doc["J"], doc["terms"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"class document missing field: {exc}") from exc
        if space is None:
            space = module_space(type_name, J)
        elif (space.type_name != type_name) or sorted(space.J) != sorted(J):
            raise SchemaError(f"document for {type_name} J={J} read into {space}")
        out = space.zero()
        for t in terms:
            try:
                coeff = parse_poly(t["coeff"], space.scalars)
                u = parse_finite(t["weyl"], space.group)
                nov = tuple(int(a) for a in t["novikov"])
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaError(f"bad term {t!r}: {exc}") from exc
            out = out + space.basis(u, nov, coeff)
        return out


# -- semi-infinite side ----------------------------------------------------------


class SemiInfiniteClass:
    """Finite sum of ``[O_{Q_J(u t_beta)}]`` with group-algebra coefficients."""

    __slots__ = ("space", "terms")

    def __init__(self, space: ModuleSpace, terms: Mapping):
        clean = {}
        for w, c in terms.items():
            if not isinstance(w, AffineWeylElt):
                raise PreconditionError(f"{w!r} is not an affine element")
            space.rep_id(w.finite)
            if any(w.translation[j - 1] for j in space.J):
                raise PreconditionError(f"{w} has translation support inside J")
            if c:
                clean[w] = c
        self.space = space
        self.terms = clean

    def __eq__(self, other):
        if not isinstance(other, SemiInfiniteClass):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __repr__(self):
        inner = " + ".join(f"({c})*[{w}]" for w, c in self.terms.items()) or "0"
        return f"SemiInfiniteClass({inner})"


def psi(x: KClass) -> SemiInfiniteClass:
    """Relabel ``[O(u)] Q^beta`` as ``[O_Q(u t_beta)]``."""
    reps = x.space.reps
    out = {}
    for (k, nov), g in x.terms.items():
        out[AffineWeylElt(reps[k], Coroot(nov))] = g
    return SemiInfiniteClass(x.space, out)


def psi_inverse(y: SemiInfiniteClass) -> KClass:
    space = y.space
    out = space.zero()
    for w, g in y.terms.items():
        out = out + space.basis(w.finite, tuple(w.translation), g.coerce(space.scalars)
                                if isinstance(g, LaurentPoly) else g)
    return out


# -- projection and ideals -------------------------------------------------------


@lru_cache(maxsize=None)
def _projection(src: ModuleSpace, dst: ModuleSpace) -> tuple:
    return tuple(dst.rep_id(min_coset_rep(u, dst.J)) for u in src.reps)


def phi_J(x: KClass, J: Iterable[int]) -> KClass:
    """Project to ``W/W_J'``: ``[O(u)] Q^beta -> [O([u]_J')] Q^{[beta]_J'}``.

    ``J'`` must contain the source J (the identity when equal).
    """
    src = x.space
    J = normalize_J(J, src.rank)
    if not src.J <= J:
        raise PreconditionError(f"cannot project from J={sorted(src.J)} to J={sorted(J)}")
    if J == src.J:
        return x
    dst = src.with_(J=J)
    target = _projection(src, dst)
    vec = [dst.ring.zero()] * dst.dim
    spec = NovikovProjection(J)
    for k, c in enumerate(x.coeffs):
        if c:
            vec[target[k]] = vec[target[k]] + specialize(c, spec).coerce(dst.ring)
    return KClass(dst, tuple(vec))


def in_kernel(x: KClass, J: Iterable[int]) -> bool:
    """Membership in ker phi_J, i.e. in the sum of the K_i for i in J."""
    return phi_J(x, x.space.J | normalize_J(J, x.space.rank)).is_zero()


def k_i_membership(x: KClass, i: int) -> bool:
    """True iff ``phi_{i}(x) = 0``, i.e. ``x`` lies in ``K_i``."""
    if not 1 <= i <= x.space.rank:
        raise PreconditionError(f"node {i} outside 1..{x.space.rank}")
    return in_kernel(x, {i})


def kernel_generator(space: ModuleSpace, u, beta, beta2, i: int) -> KClass:
    """``[O(u)] Q^beta - [O(u s_i)] Q^beta2`` with ``beta - beta2`` a multiple of ``alpha_i^v``."""
    if space.J:
        raise PreconditionError("kernel generators live over J = {}")
    if isinstance(u, str):
        u = parse_finite(u, space.group)
    diff = [a - b for a, b in zip(beta, beta2)]
    if any(d for k, d in enumerate(diff) if k != i - 1):
        raise PreconditionError(f"{tuple(beta)} - {tuple(beta2)} is not a multiple of alpha_{i}^v")
    return space.basis(u, beta) - space.basis(u * space.group.s(i), beta2)


def q_shift(x: KClass, i: int, power: int = 1) -> KClass:
    """``q^{Q_i d/dQ_i}`` raised to ``power``: multiplies ``Q^beta``-terms by ``q^{power <beta, varpi_i>}``."""
    space = x.space
    if not space.q_mode:
        raise ModeError("q_shift needs a q-mode space")
    if i in space.J or not 1 <= i <= space.rank:
        raise PreconditionError(f"q_shift index {i} must lie in J^c")
    r = space.rank

    def bump(e):
        return e[:r] + (e[r] + power * e[r + i],) + e[r + 1:]

    return KClass(space, tuple(c.map_keys(space.ring, bump) for c in x.coeffs))
