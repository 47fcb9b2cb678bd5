"""Cartan data, weight and coroot lattices, and the parabolic projection.

Conventions
-----------
Nodes are numbered ``1..r`` (Bourbaki).  The Cartan matrix is stored with
``a[i][j] = <alpha_j^vee, alpha_i>``, so that row ``i`` is the simple root
``alpha_i`` written in the fundamental-weight basis.  Weights are integer
vectors in the basis ``varpi_1..varpi_r``; coroots are integer vectors in the
basis ``alpha_1^vee..alpha_r^vee``.  With these choices the pairing
``<beta, lambda>`` is the plain dot product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError, PreconditionError

__all__ = [
    "CartanType",
    "Weight",
    "Coroot",
    "RootSystem",
    "root_system",
    "pairing",
    "project_coroot",
    "normalize_J",
    "parse_J",
]


class _LatticeVec(tuple):
    """Integer vector with componentwise arithmetic.

    Subclasses of ``tuple`` so they hash and compare cheaply; ``+`` is vector
    addition, not concatenation.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable[int] = ()):
        return super().__new__(cls, (int(c) for c in coords))

    @classmethod
    def zero(cls, rank: int):
        return cls((0,) * rank)

    @classmethod
    def basis(cls, rank: int, i: int):
        """The ``i``-th basis vector (``i`` is 1-based)."""
        return cls(1 if k == i - 1 else 0 for k in range(rank))

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if len(other) != len(self):
            raise DimensionError(f"rank mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return type(self)(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return type(self)(a - b for a, b in zip(self, other))

    def __neg__(self):
        return type(self)(-a for a in self)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return type(self)(k * a for a in self)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self)

    def __repr__(self):
        return f"{type(self).__name__}({list(self)})"


class Weight(_LatticeVec):
    """Element of the weight lattice P in fundamental-weight coordinates."""

    __slots__ = ()

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self)

    def vanishes_on(self, J) -> bool:
        """True iff the weight lies in P_J (coordinates zero on J)."""
        return all(self[i - 1] == 0 for i in J)


class Coroot(_LatticeVec):
    """Element of the coroot lattice Q^vee in simple-coroot coordinates."""

    __slots__ = ()

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self)

    def supported_off(self, J) -> bool:
        """True iff all coordinates indexed by J vanish."""
        return all(self[i - 1] == 0 for i in J)


def pairing(beta: Coroot, lam: Weight) -> int:
    """The natural pairing <beta, lambda> between Q^vee and P."""
    if len(beta) != len(lam):
        raise DimensionError(f"rank mismatch: {len(beta)} vs {len(lam)}")
    return sum(b * l for b, l in zip(beta, lam))


def normalize_J(J, rank: int | None = None) -> frozenset:
    """Turn any iterable of node labels into a frozenset, validating range."""
    members = frozenset(int(j) for j in (J or ()))
    if rank is not None:
        bad = [j for j in members if not 1 <= j <= rank]
        if bad:
            raise PreconditionError(f"nodes {sorted(bad)} outside 1..{rank}")
    return members


def parse_J(text: str, rank: int | None = None) -> frozenset:
    """Parse ``"1,2"``-style node lists; the empty string is the empty set."""
    text = (text or "").strip()
    if not text:
        return frozenset()
    try:
        nodes = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ParseError(f"bad node list {text!r}") from exc
    return normalize_J(nodes, rank)


def project_coroot(beta: Coroot, J) -> Coroot:
    """[beta]_J: delete the alpha_i^vee coordinates for i in J."""
    J = normalize_J(J, len(beta))
    return Coroot(0 if k + 1 in J else c for k, c in enumerate(beta))


# -- Cartan types ------------------------------------------------------------

_ADMISSIBLE = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: 6 <= r <= 8,
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}

_POSITIVE_ROOT_COUNT = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "E": lambda r: {6: 36, 7: 63, 8: 120}[r],
    "F": lambda r: 24,
    "G": lambda r: 6,
}


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _ADMISSIBLE:
            raise PreconditionError(f"unknown Cartan family {self.family!r}")
        if not _ADMISSIBLE[self.family](self.rank):
            raise PreconditionError(f"rank {self.rank} not admissible for {self.family}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text or "")
        if not m:
            raise ParseError(f"bad Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"

    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        r, f = self.rank, self.family
        a = [[0] * r for _ in range(r)]
        for i in range(r):
            a[i][i] = 2

        def link(i, j, ij=-1, ji=-1):
            # 1-based nodes; a[i][j] = <alpha_j^vee, alpha_i>
            a[i - 1][j - 1] = ij
            a[j - 1][i - 1] = ji

        if f in "ABC":
            for i in range(1, r):
                link(i, i + 1)
            if f == "B":
                link(r - 1, r, -2, -1)
            elif f == "C":
                link(r - 1, r, -1, -2)
        elif f == "D":
            for i in range(1, r - 1):
                link(i, i + 1)
            link(r - 2, r)
        elif f == "E":
            link(1, 3)
            link(2, 4)
            for i in range(3, r):
                link(i, i + 1)
        elif f == "F":
            link(1, 2)
            link(2, 3, -2, -1)
            link(3, 4)
        elif f == "G":
            link(1, 2, -1, -3)
        return tuple(tuple(row) for row in a)


class RootSystem:
    """Finite root system with both root and coroot data.

    Instances are immutable after construction and compared by identity;
    use :func:`root_system` to obtain the shared instance for a type.
    """

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.rank = r = cartan_type.rank
        self.cartan_matrix = cartan_type.cartan_matrix()
        self.nodes = tuple(range(1, r + 1))
        roots, coroots = self._generate_positive()
        self.positive_roots: tuple[tuple[int, ...], ...] = roots
        self.positive_coroots: tuple[Coroot, ...] = coroots
        expected = _POSITIVE_ROOT_COUNT[cartan_type.family](r)
        if len(roots) != expected:
            raise AssertionError(f"generated {len(roots)} positive roots, expected {expected}")
        heights = [sum(c) for c in roots]
        self.highest_root_index = heights.index(max(heights))
        self.highest_root = roots[self.highest_root_index]
        self.highest_coroot = coroots[self.highest_root_index]
        self.two_rho_coroot = sum(coroots, Coroot.zero(r))

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"

    @property
    def name(self) -> str:
        return str(self.cartan_type)

    # -- basic data ----------------------------------------------------------

    def _generate_positive(self):
        r, a = self.rank, self.cartan_matrix
        simple = []
        for i in range(r):
            root = tuple(1 if k == i else 0 for k in range(r))
            simple.append((root, Coroot(root)))
        seen = {pair[0]: pair[1] for pair in simple}
        order = [pair[0] for pair in simple]
        frontier = list(simple)
        while frontier:
            nxt = []
            for root, coroot in frontier:
                for j in range(r):
                    c = sum(root[k] * a[k][j] for k in range(r))
                    d = sum(coroot[k] * a[j][k] for k in range(r))
                    new_root = tuple(x - (c if k == j else 0) for k, x in enumerate(root))
                    if min(new_root) < 0 or new_root in seen:
                        continue
                    new_coroot = Coroot(x - (d if k == j else 0) for k, x in enumerate(coroot))
                    seen[new_root] = new_coroot
                    order.append(new_root)
                    nxt.append((new_root, new_coroot))
            frontier = nxt
        order.sort(key=lambda c: (sum(c), [-x for x in c]))
        return tuple(order), tuple(seen[c] for c in order)

    def simple_root(self, i: int) -> Weight:
        """alpha_i in fundamental-weight coordinates (row i of the Cartan matrix)."""
        self._check_node(i)
        return Weight(self.cartan_matrix[i - 1])

    def simple_coroot(self, i: int) -> Coroot:
        self._check_node(i)
        return Coroot.basis(self.rank, i)

    def fundamental_weight(self, i: int) -> Weight:
        self._check_node(i)
        return Weight.basis(self.rank, i)

    def root_to_weight(self, root: Sequence[int]) -> Weight:
        """Convert simple-root coordinates to fundamental-weight coordinates."""
        if len(root) != self.rank:
            raise DimensionError(f"rank mismatch: {self.rank} vs {len(root)}")
        a = self.cartan_matrix
        return Weight(
            sum(root[k] * a[k][j] for k in range(self.rank)) for j in range(self.rank)
        )

    def coroot_to_coweight(self, beta: Coroot) -> tuple[int, ...]:
        """The vector (<beta, alpha_j>)_j, i.e. beta in fundamental-coweight coordinates."""
        a = self.cartan_matrix
        return tuple(
            sum(beta[k] * a[j][k] for k in range(self.rank)) for j in range(self.rank)
        )

    def pair_with_root(self, beta: Coroot, root: Sequence[int]) -> int:
        """<beta, alpha> for alpha given in simple-root coordinates."""
        return pairing(beta, self.root_to_weight(root))

    def is_strictly_antidominant(self, beta: Coroot) -> bool:
        """Membership in Q^vee_<: <beta, alpha_i> < 0 for every simple root."""
        if len(beta) != self.rank:
            raise DimensionError(f"rank mismatch: {self.rank} vs {len(beta)}")
        return all(c < 0 for c in self.coroot_to_coweight(beta))

    def is_positive_coroot(self, beta: Coroot) -> bool:
        return not beta.is_zero() and beta.is_nonnegative()

    def _check_node(self, i):
        if not 1 <= i <= self.rank:
            raise PreconditionError(f"node {i} outside 1..{self.rank}")

    def complement(self, J) -> frozenset:
        return frozenset(self.nodes) - normalize_J(J, self.rank)

    # -- reflections ---------------------------------------------------------

    def reflect_weight(self, i: int, lam: Weight) -> Weight:
        """s_i(lambda) = lambda - <alpha_i^vee, lambda> alpha_i."""
        return lam - self.simple_root(i) * lam[i - 1]

    def reflect_coroot(self, i: int, beta: Coroot) -> Coroot:
        """s_i(beta) = beta - <beta, alpha_i> alpha_i^vee."""
        c = pairing(beta, self.simple_root(i))
        return beta - self.simple_coroot(i) * c

    def root_action_data(self, i: int):
        """Integer matrices of s_i on P and on Q^vee.

        Column ``k`` of each matrix is the image of the ``k``-th basis vector,
        so ``s_i(v) = M @ v`` for column vectors.
        """
        r = self.rank
        on_p = [self.reflect_weight(i, Weight.basis(r, k + 1)) for k in range(r)]
        on_q = [self.reflect_coroot(i, Coroot.basis(r, k + 1)) for k in range(r)]
        transpose = lambda cols: tuple(tuple(col[row] for col in cols) for row in range(r))
        return {"weight": transpose(on_p), "coroot": transpose(on_q)}

    def diagram_automorphisms_ok(self, sigma) -> bool:
        """Whether the node map ``sigma`` (dict or 1-based sequence) preserves the Cartan matrix."""
        s = _as_node_map(sigma, self.rank)
        if s is None:
            return False
        a = self.cartan_matrix
        return all(
            a[s[i] - 1][s[j] - 1] == a[i - 1][j - 1]
            for i in self.nodes
            for j in self.nodes
        )

    # -- reporting -----------------------------------------------------------

    def info(self) -> dict:
        theta, theta_v = self.highest_root, self.highest_coroot
        return {
            "type": str(self.cartan_type),
            "rank": self.rank,
            "cartan_matrix": [list(row) for row in self.cartan_matrix],
            "positive_roots": [
                {
                    "root": list(root),
                    "root_weight": list(self.root_to_weight(root)),
                    "coroot": list(cor),
                    "coroot_coweight": list(self.coroot_to_coweight(cor)),
                }
                for root, cor in zip(self.positive_roots, self.positive_coroots)
            ],
            "theta": {"root": list(theta), "weight": list(self.root_to_weight(theta))},
            "theta_vee": {
                "coroot": list(theta_v),
                "coweight": list(self.coroot_to_coweight(theta_v)),
            },
        }


def _as_node_map(sigma, rank):
    if isinstance(sigma, dict):
        s = {int(k): int(v) for k, v in sigma.items()}
    else:
        s = {k + 1: int(v) for k, v in enumerate(sigma)}
    for i in range(1, rank + 1):
        s.setdefault(i, i)
    if sorted(s) != list(range(1, rank + 1)) or sorted(s.values()) != list(range(1, rank + 1)):
        return None
    return s


@lru_cache(maxsize=None)
def _root_system(family: str, rank: int) -> RootSystem:
    return RootSystem(CartanType(family, rank))


def root_system(spec) -> RootSystem:
    """Shared RootSystem for ``"A2"``, ``CartanType`` or an existing instance."""
    if isinstance(spec, RootSystem):
        return spec
    ct = spec if isinstance(spec, CartanType) else CartanType.parse(str(spec))
    return _root_system(ct.family, ct.rank)
