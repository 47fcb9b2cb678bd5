"""Finite and affine Weyl groups.

A finite element is stored canonically as the tuple of images
``(w(alpha_1^vee), ..., w(alpha_r^vee))``.  Affine elements are pairs
``(u, beta)`` standing for ``u t_beta`` in ``W x| Q^vee`` with the group law

    (u, beta) (v, gamma) = (uv, v^{-1}(beta) + gamma).

The affine simple reflection is realized as ``s_0 = s_theta t_{-theta^vee}``,
which makes ``t_{-theta^vee} = s_theta s_0`` an identity of the group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import DimensionError, InvalidAutomorphismError, ParseError, PreconditionError
from .rootsys import Coroot, RootSystem, Weight, normalize_J, project_coroot, root_system

__all__ = [
    "WeylGroup",
    "WeylElt",
    "AffineWeylElt",
    "CosetSpace",
    "coset_space",
    "affine_length",
    "parse_finite",
    "weyl_group",
    "min_coset_rep",
    "project_affine",
    "is_waf_minus",
    "dynkin_automorphism",
    "parse_element",
]

EAGER_RANK = 4


class WeylGroup:
    """The finite Weyl group of a root system.

    Elements are enumerated eagerly for rank <= 4 and on first request
    otherwise.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        r = rs.rank
        self.identity = WeylElt(self, tuple(Coroot.basis(r, k + 1) for k in range(r)))
        self._simple = tuple(
            WeylElt(self, tuple(rs.reflect_coroot(i, Coroot.basis(r, k + 1)) for k in range(r)))
            for i in rs.nodes
        )
        if r <= EAGER_RANK:
            self.elements  # noqa: B018

    def __repr__(self):
        return f"WeylGroup({self.rs.cartan_type})"

    def s(self, i: int) -> "WeylElt":
        self.rs._check_node(i)
        return self._simple[i - 1]

    def from_word(self, word) -> "WeylElt":
        w = self.identity
        for i in word:
            w = w * self.s(i)
        return w

    def reflection(self, root) -> "WeylElt":
        """Reflection s_alpha for a positive root given in simple-root coordinates."""
        root = tuple(root)
        idx = self.rs.positive_roots.index(root)
        cor = self.rs.positive_coroots[idx]
        lam = self.rs.root_to_weight(root)
        r = self.rank
        # s_alpha(beta) = beta - <beta, alpha> alpha^vee
        images = tuple(
            Coroot.basis(r, k + 1) - cor * lam[k] for k in range(r)
        )
        return WeylElt(self, images)

    @cached_property
    def elements(self) -> tuple["WeylElt", ...]:
        """All elements in BFS order; each carries its lex-smallest reduced word."""
        out = [self.identity]
        seen = {self.identity.images}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for i in self.rs.nodes:
                    v = w * self.s(i)
                    if v.images not in seen:
                        seen.add(v.images)
                        nxt.append(v)
            out.extend(nxt)
            frontier = nxt
        return tuple(out)

    @cached_property
    def longest(self) -> "WeylElt":
        w = self.identity
        while True:
            for i in self.rs.nodes:
                if not w.has_right_descent(i):
                    w = w * self.s(i)
                    break
            else:
                return w

    def order(self) -> int:
        return len(self.elements)


@lru_cache(maxsize=None)
def _weyl_group(rs: RootSystem) -> WeylGroup:
    return WeylGroup(rs)


def weyl_group(spec) -> WeylGroup:
    """Shared WeylGroup for a type name, CartanType or RootSystem."""
    if isinstance(spec, WeylGroup):
        return spec
    return _weyl_group(root_system(spec))


@dataclass(frozen=True, eq=False)
class WeylElt:
    group: WeylGroup = field(repr=False)
    images: tuple

    def __eq__(self, other):
        return (
            isinstance(other, WeylElt)
            and other.group is self.group
            and other.images == self.images
        )

    def __hash__(self):
        return hash(self.images)

    @property
    def rs(self) -> RootSystem:
        return self.group.rs

    def act_coroot(self, beta: Coroot) -> Coroot:
        out = Coroot.zero(len(beta))
        for c, img in zip(beta, self.images):
            if c:
                out = out + img * c
        return out

    def act_weight(self, lam: Weight) -> Weight:
        for i in reversed(self.word):
            lam = self.rs.reflect_weight(i, lam)
        return lam

    def __mul__(self, other):
        if isinstance(other, AffineWeylElt):
            return AffineWeylElt(self, Coroot.zero(self.group.rank)) * other
        if not isinstance(other, WeylElt):
            return NotImplemented
        if other.group is not self.group:
            raise PreconditionError("elements of different Weyl groups")
        return WeylElt(self.group, tuple(self.act_coroot(img) for img in other.images))

    def has_right_descent(self, i: int) -> bool:
        """l(w s_i) < l(w), i.e. w(alpha_i^vee) is negative."""
        img = self.images[i - 1]
        return all(c <= 0 for c in img)

    @cached_property
    def length(self) -> int:
        return sum(
            1 for cor in self.rs.positive_coroots if not self.act_coroot(cor).is_nonnegative()
        )

    @cached_property
    def inverse(self) -> "WeylElt":
        w, word = self, []
        while not w.is_identity():
            i = next(i for i in self.rs.nodes if w.has_right_descent(i))
            word.append(i)
            w = w * self.group.s(i)
        # self = s_{word[-1]} ... s_{word[0]}, so the inverse reads word forwards
        return self.group.from_word(word)

    @cached_property
    def word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word."""
        out = []
        cur_inv = self.inverse
        while not cur_inv.is_identity():
            # left descents of cur are right descents of cur^{-1}
            i = next(i for i in self.rs.nodes if cur_inv.has_right_descent(i))
            out.append(i)
            cur_inv = cur_inv * self.group.s(i)
        return tuple(out)

    def is_identity(self) -> bool:
        return self.images == self.group.identity.images

    def __str__(self):
        return "*".join(f"s{i}" for i in self.word) if self.word else "e"

    def __repr__(self):
        return f"WeylElt({self})"

    def to_affine(self) -> "AffineWeylElt":
        return AffineWeylElt(self, Coroot.zero(self.group.rank))


@dataclass(frozen=True)
class AffineWeylElt:
    finite: WeylElt
    translation: Coroot

    def __post_init__(self):
        beta = self.translation
        if not isinstance(beta, Coroot):
            beta = Coroot(beta)
            object.__setattr__(self, "translation", beta)
        if len(beta) != self.finite.group.rank:
            raise DimensionError(f"translation {tuple(beta)} for rank {self.finite.group.rank}")

    @classmethod
    def t(cls, group: WeylGroup, beta) -> "AffineWeylElt":
        return cls(group.identity, Coroot(beta))

    @classmethod
    def s0(cls, group: WeylGroup) -> "AffineWeylElt":
        rs = group.rs
        return cls(group.reflection(rs.highest_root), -rs.highest_coroot)

    @property
    def group(self) -> WeylGroup:
        return self.finite.group

    def __mul__(self, other):
        if isinstance(other, WeylElt):
            other = other.to_affine()
        if not isinstance(other, AffineWeylElt):
            return NotImplemented
        v = other.finite
        return AffineWeylElt(
            self.finite * v, v.inverse.act_coroot(self.translation) + other.translation
        )

    def __rmul__(self, other):
        if isinstance(other, WeylElt):
            return other.to_affine() * self
        return NotImplemented

    @cached_property
    def inverse(self) -> "AffineWeylElt":
        return AffineWeylElt(self.finite.inverse, -self.finite.act_coroot(self.translation))

    @cached_property
    def length(self) -> int:
        return affine_length(self)

    def __str__(self):
        return f"{self.finite} * t[{','.join(str(c) for c in self.translation)}]"

    def compact(self) -> str:
        """Whitespace-free form in the element grammar."""
        parts = [f"s{i}" for i in self.finite.word]
        if not self.translation.is_zero():
            parts.append(f"t[{','.join(str(c) for c in self.translation)}]")
        return "*".join(parts) or "e"

    def __repr__(self):
        return f"AffineWeylElt({self})"


def affine_length(w: AffineWeylElt) -> int:
    """Iwahori-Matsumoto length: sum over positive alpha of |<beta,alpha> + chi(u alpha < 0)|."""
    u, beta = w.finite, w.translation
    rs = u.rs
    total = 0
    for root, cor in zip(rs.positive_roots, rs.positive_coroots):
        chi = 0 if u.act_coroot(cor).is_nonnegative() else 1
        total += abs(rs.pair_with_root(beta, root) + chi)
    return total


def min_coset_rep(u: WeylElt, J) -> WeylElt:
    """Shortest element of the coset u W_J."""
    J = sorted(normalize_J(J, u.group.rank))
    while True:
        for j in J:
            if u.has_right_descent(j):
                u = u * u.group.s(j)
                break
        else:
            return u


def project_affine(w: AffineWeylElt, J) -> AffineWeylElt:
    """[u t_beta]_J = [u]_J t_{[beta]_J}."""
    return AffineWeylElt(min_coset_rep(w.finite, J), project_coroot(w.translation, J))


def is_waf_minus(w: AffineWeylElt) -> bool:
    """Minimal-length representative of W_af / W."""
    length = w.length
    return all((w * w.group.s(i)).length > length for i in w.group.rs.nodes)


class CosetSpace:
    """Minimal-length representatives of W / W_J, ordered by (length, word)."""

    def __init__(self, group: WeylGroup, J=()):
        self.group = group
        self.J = normalize_J(J, group.rank)
        reps = [
            w for w in group.elements
            if not any(w.has_right_descent(j) for j in self.J)
        ]
        reps.sort(key=lambda w: (w.length, w.word))
        self.reps: tuple[WeylElt, ...] = tuple(reps)
        self.index = {w.images: k for k, w in enumerate(self.reps)}
        sub = 1
        if self.J:
            sub = sum(
                1 for w in group.elements
                if all(i in self.J for i in w.word)
            )
        if len(self.reps) * sub != group.order():
            raise AssertionError("coset count mismatch")

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)

    def id_of(self, u: WeylElt) -> int:
        """Index of the coset containing ``u``."""
        rep = min_coset_rep(u, self.J)
        return self.index[rep.images]

    def __repr__(self):
        return f"CosetSpace({self.group.rs.cartan_type}, J={sorted(self.J)})"


@lru_cache(maxsize=None)
def _coset_space(group: WeylGroup, J: frozenset) -> CosetSpace:
    return CosetSpace(group, J)


def coset_space(spec, J=()) -> CosetSpace:
    group = weyl_group(spec)
    return _coset_space(group, normalize_J(J, group.rank))


def _node_map(sigma, rs):
    from .rootsys import _as_node_map

    s = _as_node_map(sigma, rs.rank)
    if s is None or not rs.diagram_automorphisms_ok(s):
        raise InvalidAutomorphismError(f"{sigma!r} does not preserve the Cartan matrix")
    return s


def permute_coroot(s: dict, beta: Coroot) -> Coroot:
    out = [0] * len(beta)
    for k, c in enumerate(beta):
        out[s[k + 1] - 1] = c
    return Coroot(out)


def permute_weight(s: dict, lam: Weight) -> Weight:
    out = [0] * len(lam)
    for k, c in enumerate(lam):
        out[s[k + 1] - 1] = c
    return Weight(out)


def dynkin_automorphism(sigma, w):
    """Image of ``w`` under the automorphism s_i -> s_{sigma(i)}."""
    group = w.group
    s = _node_map(sigma, group.rs)
    if isinstance(w, AffineWeylElt):
        return AffineWeylElt(dynkin_automorphism(s, w.finite), permute_coroot(s, w.translation))
    images = [None] * group.rank
    for k, img in enumerate(w.images):
        images[s[k + 1] - 1] = permute_coroot(s, img)
    return WeylElt(group, tuple(images))


_TOKEN = re.compile(r"e|s(\d+)|t\[(-?\d+(?:,-?\d+)*)\]")


def parse_element(text: str, group: WeylGroup) -> AffineWeylElt:
    """Parse the element grammar, e.g. ``s1*s2*t[-1,-1]`` or ``s0``."""
    text = (text or "").strip()
    if not text or any(ch.isspace() for ch in text):
        raise ParseError(f"bad element {text!r}: empty or contains whitespace")
    out = AffineWeylElt(group.identity, Coroot.zero(group.rank))
    for tok in text.split("*"):
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ParseError(f"bad element token {tok!r} in {text!r}")
        if m.group(1) is not None:
            i = int(m.group(1))
            if i == 0:
                factor = AffineWeylElt.s0(group)
            elif 1 <= i <= group.rank:
                factor = group.s(i).to_affine()
            else:
                raise ParseError(f"no generator s{i} in rank {group.rank}")
        elif m.group(2) is not None:
            coords = [int(c) for c in m.group(2).split(",")]
            if len(coords) != group.rank:
                raise ParseError(f"translation {tok!r} has wrong rank")
            factor = AffineWeylElt.t(group, coords)
        else:
            continue
        out = out * factor
    return out


def parse_finite(text: str, group: WeylGroup) -> WeylElt:
    w = parse_element(text, group)
    if not w.translation.is_zero():
        raise ParseError(f"{text!r} is not a finite Weyl group element")
    return w.finite
