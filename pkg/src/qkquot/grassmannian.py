"""The formal Pontryagin algebra K_H(Gr), its localization and the Peterson maps.

Classes ``[O_{Gr_w}]`` are formal symbols indexed by ``w`` in W_af^-.  The
localized algebra inverts the translation classes ``[O_{Gr_{t_beta}}]`` with
``beta`` strictly antidominant; an element is stored as a numerator class
together with one accumulated denominator translation.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .coeffs import CoeffRing, LaurentPoly
from .errors import PreconditionError, RingMismatchError, UnsupportedError
from .kmodule import KClass, ModuleSpace, module_space
from .rootsys import Coroot, RootSystem, normalize_J, project_coroot, root_system
from .weyl import AffineWeylElt, WeylGroup, is_waf_minus, min_coset_rep, weyl_group

__all__ = [
    "GrClass",
    "LocalizedGrClass",
    "gr_basis",
    "pontryagin_translate",
    "peterson_phi",
    "eta_J",
    "phi_inverse",
    "eta_lift",
    "pontryagin_product_loc",
    "auto_translation",
]


def _check_antidominant(rs: RootSystem, beta) -> Coroot:
    beta = Coroot(beta)
    if not rs.is_strictly_antidominant(beta):
        raise PreconditionError(f"{tuple(beta)} is not strictly antidominant")
    return beta


class GrClass:
    """Finite sum ``sum_w c_w [O_{Gr_w}]`` with ``w`` in W_af^- and ``c_w`` in C[P]."""

    __slots__ = ("group", "ring", "terms")

    def __init__(self, group: WeylGroup, terms: Mapping[AffineWeylElt, object] | None = None):
        self.group = group
        self.ring = CoeffRing.group_algebra(group.rank)
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(w, AffineWeylElt) or w.group is not group:
                raise PreconditionError(f"{w!r} is not an affine element of {group}")
            if not is_waf_minus(w):
                raise PreconditionError(f"{w} is not a minimal representative of W_af/W")
            if not isinstance(c, LaurentPoly):
                c = self.ring.const(c)
            elif c.ring != self.ring:
                c = c.coerce(self.ring)
            if c:
                clean[w] = clean[w] + c if w in clean else c
        self.terms = {w: c for w, c in clean.items() if c}

    @property
    def rs(self) -> RootSystem:
        return self.group.rs

    def __eq__(self, other):
        if not isinstance(other, GrClass):
            return NotImplemented
        return self.group is other.group and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.group), frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, GrClass):
            return NotImplemented
        if other.group is not self.group:
            raise RingMismatchError("classes over different groups")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return GrClass(self.group, out)

    def __neg__(self):
        return GrClass(self.group, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, LaurentPoly):
            scalar = scalar.coerce(self.ring)
        return GrClass(self.group, {w: c * scalar for w, c in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (t[0].finite.length, t[0].finite.word,
                                                          tuple(t[0].translation)))
        return " + ".join(f"({c})*[Gr {w.compact()}]" for w, c in items)

    __repr__ = __str__


def gr_basis(group: WeylGroup, w: AffineWeylElt, coeff=1) -> GrClass:
    return GrClass(group, {w: coeff})


def pontryagin_translate(x: GrClass, beta) -> GrClass:
    """``x (.) [O_{Gr_{t_beta}}]``: right multiplication of every index by ``t_beta``."""
    beta = _check_antidominant(x.rs, beta)
    t = AffineWeylElt.t(x.group, beta)
    return GrClass(x.group, {w * t: c for w, c in x.terms.items()})


class LocalizedGrClass:
    """``numerator (.) [O_{Gr_{t_denom}}]^{-1}``.

    ``certificate`` lists strictly antidominant summands of ``denom``; the
    constructor checks each one and their sum.
    """

    __slots__ = ("numerator", "denom", "certificate")

    def __init__(self, numerator: GrClass, denom, certificate: Iterable | None = None):
        rs = numerator.rs
        denom = Coroot(denom)
        cert = tuple(Coroot(c) for c in (certificate if certificate is not None else (denom,)))
        if len(denom) != rs.rank:
            raise PreconditionError(f"denominator {tuple(denom)} has the wrong rank")
        if not cert:
            raise PreconditionError("empty denominator certificate")
        for c in cert:
            _check_antidominant(rs, c)
        if sum(cert, Coroot.zero(rs.rank)) != denom:
            raise PreconditionError("certificate does not sum to the denominator")
        self.numerator = numerator
        self.denom = denom
        self.certificate = cert

    @property
    def group(self) -> WeylGroup:
        return self.numerator.group

    def translate(self, gamma) -> "LocalizedGrClass":
        """The equivalent presentation ``(x (.) t_gamma, denom + gamma)``."""
        gamma = _check_antidominant(self.numerator.rs, gamma)
        return LocalizedGrClass(
            pontryagin_translate(self.numerator, gamma), self.denom + gamma, self.certificate + (gamma,)
        )

    def __eq__(self, other):
        if not isinstance(other, LocalizedGrClass):
            return NotImplemented
        if other.group is not self.group:
            return False
        if self.denom == other.denom:
            return self.numerator == other.numerator
        return self.translate(other.denom).numerator == other.translate(self.denom).numerator

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, LocalizedGrClass):
            return NotImplemented
        if self.denom == other.denom:
            return LocalizedGrClass(self.numerator + other.numerator, self.denom, self.certificate)
        a, b = self.translate(other.denom), other.translate(self.denom)
        return LocalizedGrClass(a.numerator + b.numerator, a.denom, a.certificate)

    def __mul__(self, scalar):
        return LocalizedGrClass(self.numerator * scalar, self.denom, self.certificate)

    __rmul__ = __mul__

    def __str__(self):
        return f"({self.numerator}) / [Gr t{list(self.denom)}]"

    __repr__ = __str__


def auto_translation(x: LocalizedGrClass) -> LocalizedGrClass:
    """Translate by a multiple of ``-2 rho^v`` until every numerator index is ``u t_beta1``
    with ``beta1`` strictly antidominant."""
    rs = x.numerator.rs
    step = -rs.two_rho_coroot
    k = 0
    while not all(rs.is_strictly_antidominant(w.translation + step * k) for w in x.numerator.terms):
        k += 1
    return x.translate(step * k) if k else x


def _space(group: WeylGroup, J=()) -> ModuleSpace:
    return module_space(group.rs, J, q_mode=False, localized=True)


def peterson_phi(x: LocalizedGrClass) -> KClass:
    """``[O_{Gr_{u t_b1}}] (.) [O_{Gr_{t_b2}}]^{-1} -> [O(u)] Q^{b1 - b2}``."""
    y = auto_translation(x)
    space = _space(x.group)
    out = space.zero()
    for w, c in y.numerator.terms.items():
        out = out + space.basis(w.finite, tuple(w.translation - y.denom), c)
    return out


def eta_J(x: LocalizedGrClass, J: Iterable[int]) -> KClass:
    """``[O_{Gr_{u t_b1}}] (.) [O_{Gr_{t_b2}}]^{-1} -> [O_J([u]_J)] Q^{[b1 - b2]_J}``."""
    rs = x.numerator.rs
    J = normalize_J(J, rs.rank)
    y = auto_translation(x)
    space = _space(x.group, J)
    out = space.zero()
    for w, c in y.numerator.terms.items():
        beta = project_coroot(w.translation - y.denom, J)
        out = out + space.basis(min_coset_rep(w.finite, J), tuple(beta), c)
    return out


def phi_inverse(z: KClass) -> LocalizedGrClass:
    """A presentation ``(numerator, denom)`` with ``peterson_phi`` equal to ``z``."""
    space = z.space
    if space.J:
        raise PreconditionError("phi_inverse takes classes over J = {}")
    group = space.group
    rs = space.rs
    terms = z.terms
    step = -rs.two_rho_coroot
    k = 1
    while not all(rs.is_strictly_antidominant(Coroot(nov) + step * k) for (_, nov) in terms):
        k += 1
    denom = step * k
    num = {}
    for (rid, nov), c in terms.items():
        num[AffineWeylElt(space.reps[rid], Coroot(nov) + denom)] = c
    return LocalizedGrClass(GrClass(group, num), denom, (step,) * k)


def eta_lift(z: KClass) -> LocalizedGrClass:
    """Preimage under ``eta_J``: lift reps to W and exponents with zero J-coordinates."""
    base = _space(z.space.group)
    lifted = base.zero()
    for (rid, nov), c in z.terms.items():
        lifted = lifted + base.basis(z.space.reps[rid], nov, c)
    return phi_inverse(lifted)


def pontryagin_product_loc(x: LocalizedGrClass, y: LocalizedGrClass) -> LocalizedGrClass:
    """``Phi^{-1}(Phi(x) * Phi(y))`` using the reconstructed quantum product."""
    from .qkring import ring_for

    if x.group is not y.group:
        raise RingMismatchError("classes over different groups")
    table = ring_for(x.group.rs.name)
    return phi_inverse(table.star(peterson_phi(x), peterson_phi(y)))
