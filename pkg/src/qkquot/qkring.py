"""Quantum K-rings from Chevalley data.

Pipeline: divisor columns ``s_i * v`` give the operators
``A_i(1)(y) = e^{-w0 varpi_i} (y - s_i * y)``; every Schubert class is written
as a polynomial in the commuting operators applied to the identity class, and
``u * v = p_u(A)(v)``.  Quotient rings are built from the induced operators on
``W/W_J``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from pathlib import Path
from typing import Iterable, Mapping

import jsonschema

from .coeffs import (
    CoeffRing,
    DiagramRelabel,
    ExactMatrix,
    FracElt,
    LaurentPoly,
    NotDivisibleError,
    exact_divide,
    parse_poly,
    solve_linear,
    specialize,
)
from .errors import (
    InconsistentDataError,
    NonPolynomialProductError,
    ParseError,
    PreconditionError,
    ReconstructionError,
    SchemaError,
    TheoremViolationError,
    UnsupportedError,
)
from .kmodule import KClass, ModuleSpace, module_space, phi_J, q_shift
from .rootsys import Weight, normalize_J, root_system
from .weyl import dynkin_automorphism, parse_finite, permute_coroot, weyl_group

__all__ = [
    "GOLDEN_A2_S1",
    "load_golden_a2",
    "derive_s2_column",
    "relabel_class",
    "divisor_class",
    "ChevalleyTable",
    "build_operators",
    "Expression",
    "reconstruct_expression",
    "RingTable",
    "build_ring",
    "star",
    "quotient_ring",
    "a2_chevalley",
    "a2_ring",
    "a2_quotient",
    "load_external_chevalley",
    "chevalley_from_doc",
    "QOperator",
]

# s_1 * v for qK_H(SL3/B).  Each term is
# (integer, e^{root} exponent in simple-root coordinates, Schubert word, Q exponent).
GOLDEN_A2_S1 = {
    "e": [(1, (0, 0), "s1", (0, 0))],
    "s1": [
        (1, (0, 0), "s1", (0, 0)),
        (-1, (0, 1), "s1", (0, 0)),
        (1, (0, 1), "e", (1, 0)),
        (1, (0, 1), "s2*s1", (0, 0)),
        (-1, (0, 1), "s2", (1, 0)),
    ],
    "s2": [
        (1, (0, 0), "s1*s2", (0, 0)),
        (1, (0, 0), "s2*s1", (0, 0)),
        (-1, (0, 0), "s1*s2*s1", (0, 0)),
    ],
    "s1*s2": [
        (1, (0, 0), "s1*s2", (0, 0)),
        (-1, (0, 1), "s1*s2", (0, 0)),
        (1, (0, 1), "s1*s2*s1", (0, 0)),
    ],
    "s2*s1": [
        (1, (0, 0), "s2*s1", (0, 0)),
        (-1, (1, 1), "s2*s1", (0, 0)),
        (1, (1, 1), "s2", (1, 0)),
    ],
    "s1*s2*s1": [
        (1, (0, 0), "s1*s2*s1", (0, 0)),
        (-1, (1, 1), "s1*s2*s1", (0, 0)),
        (1, (1, 1), "e", (1, 1)),
        (1, (1, 1), "s1*s2", (1, 0)),
        (-1, (1, 1), "s1", (1, 1)),
    ],
}


def _class_from_terms(space: ModuleSpace, terms) -> KClass:
    rs = space.rs
    out = space.zero()
    for c, root, word, nov in terms:
        coeff = space.ring.monomial(weight=rs.root_to_weight(root), novikov=nov, coeff=c)
        out = out + space.basis(word) * coeff
    return out


def load_golden_a2() -> dict:
    """``{v: s_1 * v}`` over A2, J = {} (keys are Weyl group elements)."""
    space = module_space("A2")
    return {parse_finite(v, space.group): _class_from_terms(space, t) for v, t in GOLDEN_A2_S1.items()}


def relabel_class(x: KClass, sigma) -> KClass:
    """Transport a class by a diagram automorphism (indices and coefficients)."""
    space = x.space
    s = {int(k): int(v) for k, v in dict(sigma).items()}
    J2 = frozenset(s.get(j, j) for j in space.J)
    dst = space.with_(J=J2)
    vec = [dst.ring.zero()] * dst.dim
    for k, c in enumerate(x.coeffs):
        if c:
            u = dynkin_automorphism(s, space.reps[k])
            vec[dst.rep_id(u)] = specialize(c, DiagramRelabel(s)).coerce(dst.ring)
    return KClass(dst, tuple(vec))


def derive_s2_column(golden: Mapping | None = None) -> dict:
    """``{v: s_2 * v}`` from the s_1 column via the A2 diagram automorphism."""
    golden = golden if golden is not None else load_golden_a2()
    sigma = {1: 2, 2: 1}
    return {dynkin_automorphism(sigma, v): relabel_class(x, sigma) for v, x in golden.items()}


def divisor_class(space: ModuleSpace, i: int) -> LaurentPoly:
    """The scalar ``e^{-w0 varpi_i}``."""
    w0 = space.group.longest
    lam = -w0.act_weight(space.rs.fundamental_weight(i))
    return space.ring.weight(lam)


# -- operators -------------------------------------------------------------------


class ChevalleyTable:
    """Matrices of ``A_i(1)`` (``i`` in J^c) on the Schubert basis of a space.

    Column ``k`` of ``ops[i]`` is ``A_i(1)`` applied to the ``k``-th basis class.
    """

    def __init__(self, space: ModuleSpace, ops: Mapping[int, ExactMatrix], check: bool = True):
        self.space = space
        self.nodes = tuple(sorted(space.rs.complement(space.J)))
        if sorted(ops) != list(self.nodes):
            raise InconsistentDataError(f"operators given for {sorted(ops)}, need {list(self.nodes)}")
        self.ops = {i: ops[i] for i in self.nodes}
        for i, M in self.ops.items():
            if (M.rows, M.cols) != (space.dim, space.dim):
                raise InconsistentDataError(f"A_{i} has shape {M.rows}x{M.cols}, need {space.dim}")
            if M.ring != space.ring:
                raise InconsistentDataError(f"A_{i} entries are not in {space.ring}")
        self._poly = {}
        for i, M in self.ops.items():
            try:
                self._poly[i] = M.poly_entries()
            except NotDivisibleError as exc:
                raise InconsistentDataError(f"A_{i} has a non-polynomial entry") from exc
        if check:
            self.validate()

    def validate(self) -> None:
        """Commutativity and the identity column ``A_i(e) = e^{-w0 varpi_i}([e] - [s_i])``."""
        space = self.space
        for i, j in iproduct(self.nodes, self.nodes):
            if i < j and not (self.ops[i] @ self.ops[j] == self.ops[j] @ self.ops[i]):
                raise InconsistentDataError(f"A_{i} and A_{j} do not commute")
        one = space.identity()
        for i in self.nodes:
            want = (one - space.basis(space.group.s(i))) * divisor_class(space, i)
            if self.apply(i, one) != want:
                raise InconsistentDataError(f"A_{i} does not act on the identity class as a divisor")

    def apply(self, i: int, x: KClass) -> KClass:
        if x.space != self.space:
            raise PreconditionError(f"class from {x.space}, table over {self.space}")
        M = self._poly[i]
        ring = self.space.ring
        vec = []
        for row in M:
            acc = ring.zero()
            for a, c in zip(row, x.coeffs):
                if a and c:
                    acc = acc + a * c
            vec.append(acc)
        return KClass(self.space, tuple(vec))

    def apply_monomial(self, m: tuple, x: KClass) -> KClass:
        for i, k in zip(self.nodes, m):
            for _ in range(k):
                x = self.apply(i, x)
        return x

    def divisor_columns(self) -> dict:
        """Recover ``{i: {v: s_i * v}}`` from the operators."""
        space = self.space
        out = {}
        for i in self.nodes:
            inv = divisor_class(space, i).inverse()
            out[i] = {v: space.basis(v) - self.apply(i, space.basis(v)) * inv for v in space.reps}
        return out

    def __eq__(self, other):
        if not isinstance(other, ChevalleyTable):
            return NotImplemented
        return self.space == other.space and all(self.ops[i] == other.ops[i] for i in self.nodes)

    __hash__ = None

    def to_doc(self) -> dict:
        return {
            "type": self.space.type_name,
            "J": sorted(self.space.J),
            "basis": [str(u) for u in self.space.reps],
            "operators": {
                str(i): [[e.format() for e in row] for row in self._poly[i]] for i in self.nodes
            },
        }


def build_operators(space: ModuleSpace, columns: Mapping[int, Mapping]) -> ChevalleyTable:
    """Assemble ``A_i(1)`` from divisor columns ``{i: {v: s_i * v}}``."""
    ops = {}
    for i in sorted(space.rs.complement(space.J)):
        if i not in columns:
            raise InconsistentDataError(f"missing divisor column for s_{i}")
        col = columns[i]
        scale = divisor_class(space, i)
        cols = []
        for v in space.reps:
            if v not in col:
                raise InconsistentDataError(f"column s_{i} lacks the product with {v}")
            prod = col[v]
            if prod.space != space:
                raise InconsistentDataError(f"s_{i} * {v} lives in {prod.space}")
            y = space.basis(v) - prod
            cols.append([c * scale for c in y.coeffs])
        ops[i] = ExactMatrix.from_columns(cols, space.ring)
    for i in columns:
        if i in space.J:
            raise InconsistentDataError(f"divisor column for s_{i} with {i} in J")
    return ChevalleyTable(space, ops)


# -- reconstruction --------------------------------------------------------------


def _monomials(n: int, d: int) -> list:
    out = [m for m in iproduct(range(d + 1), repeat=n) if sum(m) <= d]
    return sorted(out, key=lambda m: (sum(m), tuple(-k for k in m)))


@dataclass
class Expression:
    """``x = sum_m (numerators[m] / denominator) A^m (identity)``."""

    table: ChevalleyTable
    monomials: list
    numerators: list
    denominator: LaurentPoly
    degree: int
    rank_profile: list = field(default_factory=list)

    def coefficients(self) -> list:
        from .coeffs import normalize_fraction

        return [normalize_fraction(FracElt(n, self.denominator)) for n in self.numerators]

    def apply(self, y: KClass) -> KClass:
        """``p(A)(y)``; the result must be denominator free and Q-polynomial."""
        T = self.table
        space = T.space
        acc = [space.ring.zero()] * space.dim
        cache = {}
        for m, n in zip(self.monomials, self.numerators):
            if not n:
                continue
            v = _power_apply(T, m, y, cache)
            for k, c in enumerate(v.coeffs):
                if c:
                    acc[k] = acc[k] + n * c
        out = []
        for c in acc:
            try:
                out.append(exact_divide(c, self.denominator))
            except NotDivisibleError as exc:
                raise NonPolynomialProductError("product kept a denominator") from exc
        res = KClass(space, tuple(out))
        polynomial_input = all(c.has_nonnegative_novikov() for c in y.coeffs)
        if polynomial_input and not all(c.has_nonnegative_novikov() for c in res.coeffs):
            raise NonPolynomialProductError("product has a negative Novikov exponent")
        return res

    def __str__(self):
        names = [f"A{i}" for i in self.table.nodes]
        parts = []
        for m, c in zip(self.monomials, self.coefficients()):
            if c.is_zero():
                continue
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, m) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


def _power_apply(T: ChevalleyTable, m: tuple, y: KClass, cache: dict) -> KClass:
    if m in cache:
        return cache[m]
    if not any(m):
        res = y
    else:
        k = max(idx for idx, e in enumerate(m) if e)
        prev = list(m)
        prev[k] -= 1
        res = T.apply(T.nodes[k], _power_apply(T, tuple(prev), y, cache))
    cache[m] = res
    return res


def reconstruct_expression(x: KClass, T: ChevalleyTable, cap: int | None = None) -> Expression:
    """Solve ``x = p(A)(identity)`` with monomials of degree <= d, d = 1, 2, ..."""
    space = T.space
    if x.space != space:
        raise PreconditionError(f"class from {x.space}, table over {space}")
    cap = 2 * space.dim if cap is None else cap
    one = space.identity()
    cache: dict = {}
    profile = []
    for d in range(1, cap + 1):
        monos = _monomials(len(T.nodes), d)
        cols = [_power_apply(T, m, one, cache).coeffs for m in monos]
        M = ExactMatrix.from_columns(cols, space.ring)
        sol = solve_linear(M, list(x.coeffs))
        profile.append((d, sol.rank))
        if sol.solvable:
            return Expression(T, monos, sol.numerators, sol.denominator, d, profile)
        if len(T.nodes) == 0:
            break
    raise ReconstructionError(
        f"{x} is not reached by operator monomials of degree <= {cap}", profile
    )


# -- ring tables -----------------------------------------------------------------


class RingTable:
    """Structure constants ``products[(a, b)] = [u_a] * [u_b]`` on a basis."""

    def __init__(self, space: ModuleSpace, products: Mapping, chevalley: ChevalleyTable | None = None,
                 expressions: Mapping | None = None):
        self.space = space
        self.products = dict(products)
        self.chevalley = chevalley
        self.expressions = dict(expressions or {})
        n = space.dim
        if sorted(self.products) != [(a, b) for a in range(n) for b in range(n)]:
            raise InconsistentDataError("incomplete product table")

    @property
    def J(self) -> frozenset:
        return self.space.J

    def product(self, u, v) -> KClass:
        sp = self.space
        if isinstance(u, str):
            u = parse_finite(u, sp.group)
        if isinstance(v, str):
            v = parse_finite(v, sp.group)
        return self.products[(sp.rep_id(u), sp.rep_id(v))]

    def star(self, x: KClass, y: KClass) -> KClass:
        sp = self.space
        if x.space != sp or y.space != sp:
            raise PreconditionError("classes must live in the table's space")
        vec = [sp.ring.zero()] * sp.dim
        for a, ca in enumerate(x.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(y.coeffs):
                if not cb:
                    continue
                c = ca * cb
                for k, p in enumerate(self.products[(a, b)].coeffs):
                    if p:
                        vec[k] = vec[k] + c * p
        return KClass(sp, tuple(vec))

    def __eq__(self, other):
        if not isinstance(other, RingTable):
            return NotImplemented
        return self.space == other.space and self.products == other.products

    __hash__ = None

    # -- checks ------------------------------------------------------------------

    def basis(self) -> list:
        return [self.space.basis(u) for u in self.space.reps]

    def commutativity_failures(self) -> list:
        n = self.space.dim
        return [(a, b) for a in range(n) for b in range(a + 1, n)
                if self.products[(a, b)] != self.products[(b, a)]]

    def associativity_failures(self) -> list:
        B = self.basis()
        n = len(B)
        bad = []
        for a, b, c in iproduct(range(n), repeat=3):
            left = self.star(self.products[(a, b)], B[c])
            right = self.star(B[a], self.products[(b, c)])
            if left != right:
                bad.append((a, b, c))
        return bad

    def identity_failures(self) -> list:
        sp = self.space
        e = sp.rep_id(sp.group.identity)
        B = self.basis()
        return [b for b in range(sp.dim) if self.products[(e, b)] != B[b]]

    def polynomiality_failures(self) -> list:
        return [k for k, x in self.products.items()
                if not all(c.has_nonnegative_novikov() for c in x.coeffs)]

    # -- documents ---------------------------------------------------------------

    def to_doc(self) -> dict:
        sp = self.space
        reps = sp.reps
        doc = {
            "header": {
                "type": sp.type_name,
                "J": sorted(sp.J),
                "novikov_nodes": list(sp.ring.novikov_nodes),
                "basis": [{"id": k, "word": str(u), "length": u.length} for k, u in enumerate(reps)],
            },
        }
        if self.chevalley is not None:
            doc["operators"] = self.chevalley.to_doc()["operators"]
        doc["products"] = [
            {"lhs": str(reps[a]), "rhs": str(reps[b]), "class": self.products[(a, b)].to_doc()}
            for a in range(sp.dim) for b in range(sp.dim)
        ]
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_doc(), indent=2, ensure_ascii=True) + "\n"

    @classmethod
    def from_doc(cls, doc: Mapping) -> "RingTable":
        _validate(doc, _TABLE_SCHEMA)
        head = doc["header"]
        space = _space_for(head["type"], head["J"])
        _check_basis(space, [b["word"] for b in head["basis"]])
        products = {}
        for entry in doc["products"]:
            a = space.rep_id(parse_finite(entry["lhs"], space.group))
            b = space.rep_id(parse_finite(entry["rhs"], space.group))
            products[(a, b)] = KClass.from_doc(entry["class"], space)
        chev = None
        if "operators" in doc:
            chev = chevalley_from_doc({"type": head["type"], "J": head["J"],
                                       "basis": [b["word"] for b in head["basis"]],
                                       "operators": doc["operators"]})
        return cls(space, products, chev)


def build_ring(T: ChevalleyTable) -> RingTable:
    """Reconstruct the full multiplication table from Chevalley operators."""
    space = T.space
    exprs = {k: reconstruct_expression(space.basis(u), T) for k, u in enumerate(space.reps)}
    products = {}
    for a in range(space.dim):
        for b in range(space.dim):
            products[(a, b)] = exprs[a].apply(space.basis(space.reps[b]))
    return RingTable(space, products, T, exprs)


def star(x: KClass, y: KClass, table: RingTable) -> KClass:
    return table.star(x, y)


# -- quotients -------------------------------------------------------------------


def quotient_ring(J: Iterable[int], base: RingTable):
    """Build ``qK(B_J)`` from the full-flag table; returns ``(RingTable, ChevalleyTable)``.

    (a) ``phi_J`` must kill ``([u] - [u s_i] Q^{k alpha_i^v}) * [v]`` for ``i`` in J;
    (b) ``A_i`` descends: ``phi_J(A_i(u))`` depends only on ``[u]_J``;
    (c) the quotient table is reconstructed from the induced operators.
    """
    src = base.space
    if src.J:
        raise PreconditionError("quotient_ring needs the table over J = {}")
    if base.chevalley is None:
        raise PreconditionError("base table carries no Chevalley operators")
    J = normalize_J(J, src.rank)
    dst = src.with_(J=J)
    group = src.group
    for i in sorted(J):
        si = group.s(i)
        for u in group.elements:
            for k in (0, 1, -1):
                beta = [0] * src.rank
                beta[i - 1] = k
                g = src.basis(u) - src.basis(u * si, tuple(beta))
                for v in src.reps:
                    if not phi_J(base.star(g, src.basis(v)), J).is_zero():
                        raise TheoremViolationError(
                            f"phi_J does not kill ({g}) * [{v}] for J={sorted(J)}")
    ops = {}
    for i in sorted(src.rs.complement(J)):
        cols = [phi_J(base.chevalley.apply(i, src.basis(v)), J).coeffs for v in dst.reps]
        ops[i] = ExactMatrix.from_columns(cols, dst.ring)
    T = ChevalleyTable(dst, ops)
    for i in T.nodes:
        for u in group.elements:
            lhs = phi_J(base.chevalley.apply(i, src.basis(u)), J)
            rhs = T.apply(i, phi_J(src.basis(u), J))
            if lhs != rhs:
                raise TheoremViolationError(f"A_{i} does not descend at {u} for J={sorted(J)}")
    return build_ring(T), T


# -- builtin A2 data -------------------------------------------------------------


@lru_cache(maxsize=None)
def a2_chevalley() -> ChevalleyTable:
    space = module_space("A2")
    return build_operators(space, {1: load_golden_a2(), 2: derive_s2_column()})


@lru_cache(maxsize=None)
def a2_ring() -> RingTable:
    return build_ring(a2_chevalley())


@lru_cache(maxsize=None)
def _a2_quotient(J: frozenset) -> RingTable:
    if not J:
        return a2_ring()
    return quotient_ring(J, a2_ring())[0]


def a2_quotient(J: Iterable[int] = ()) -> RingTable:
    return _a2_quotient(normalize_J(J, 2))


def ring_for(type_name: str, J: Iterable[int] = ()) -> RingTable:
    """The builtin table for a type; only A2 carries quantum data."""
    rs = root_system(type_name)
    if rs.name != "A2":
        raise UnsupportedError(f"no quantum K Chevalley data for type {rs.name}")
    return a2_quotient(J)


# -- q-mode operators ------------------------------------------------------------


class QOperator:
    """``O_i = A_i(1) o q_shift_i^{-1}`` on a q-mode space.

    It is C_qP-linear and satisfies ``O_i(Q^beta y) = q^{-<beta, varpi_i>} Q^beta O_i(y)``.
    """

    def __init__(self, T: ChevalleyTable, i: int):
        if i not in T.nodes:
            raise PreconditionError(f"no operator A_{i} for J={sorted(T.space.J)}")
        self.i = i
        self.space = T.space.with_(q_mode=True)
        ring = self.space.ring
        self._matrix = [[e.coerce(ring) for e in row] for row in T._poly[i]]

    def __call__(self, x: KClass) -> KClass:
        if x.space != self.space:
            raise PreconditionError(f"class from {x.space}, operator on {self.space}")
        y = q_shift(x, self.i, -1)
        ring = self.space.ring
        vec = []
        for row in self._matrix:
            acc = ring.zero()
            for a, c in zip(row, y.coeffs):
                if a and c:
                    acc = acc + a * c
            vec.append(acc)
        return KClass(self.space, tuple(vec))


# -- external data ---------------------------------------------------------------

_CLASS_SCHEMA = {
    "type": "object",
    "required": ["type", "J", "terms"],
    "properties": {
        "type": {"type": "string"},
        "J": {"type": "array", "items": {"type": "integer"}},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "weyl", "novikov"],
                "properties": {
                    "coeff": {"type": "string"},
                    "weyl": {"type": "string"},
                    "novikov": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
}

CHEVALLEY_SCHEMA = {
    "type": "object",
    "required": ["type", "J"],
    "properties": {
        "type": {"type": "string"},
        "J": {"type": "array", "items": {"type": "integer"}},
        "basis": {"type": "array", "items": {"type": "string"}},
        "columns": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": _CLASS_SCHEMA,
            },
        },
        "operators": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
    "oneOf": [{"required": ["columns"]}, {"required": ["operators"]}],
}

_TABLE_SCHEMA = {
    "type": "object",
    "required": ["header", "products"],
    "properties": {
        "header": {
            "type": "object",
            "required": ["type", "J", "basis"],
            "properties": {
                "type": {"type": "string"},
                "J": {"type": "array", "items": {"type": "integer"}},
                "basis": {
                    "type": "array",
                    "items": {"type": "object", "required": ["word"]},
                },
            },
        },
        "operators": CHEVALLEY_SCHEMA["properties"]["operators"],
        "products": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["lhs", "rhs", "class"],
                "properties": {"class": _CLASS_SCHEMA},
            },
        },
    },
}


def _validate(doc, schema):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from exc


def _space_for(type_name, J) -> ModuleSpace:
    try:
        return module_space(type_name, J)
    except ParseError as exc:
        raise SchemaError(str(exc)) from exc


def _check_basis(space: ModuleSpace, words) -> None:
    want = [str(u) for u in space.reps]
    got = [str(parse_finite(w, space.group)) for w in words]
    if got != want:
        raise SchemaError(f"basis {got} does not match {want}")


def chevalley_from_doc(doc: Mapping) -> ChevalleyTable:
    _validate(doc, CHEVALLEY_SCHEMA)
    space = _space_for(doc["type"], doc["J"])
    if "basis" in doc:
        _check_basis(space, doc["basis"])
    if "columns" in doc:
        columns = {}
        for key, col in doc["columns"].items():
            i = int(key)
            columns[i] = {}
            for word, cdoc in col.items():
                v = parse_finite(word, space.group)
                columns[i][v] = KClass.from_doc(cdoc, space)
        return build_operators(space, columns)
    ops = {}
    for key, rows in doc["operators"].items():
        try:
            ops[int(key)] = ExactMatrix([[parse_poly(e, space.ring) for e in row] for row in rows],
                                        space.ring)
        except ParseError as exc:
            raise SchemaError(f"operator A_{key}: {exc}") from exc
    return ChevalleyTable(space, ops)


def load_external_chevalley(path) -> ChevalleyTable:
    """Read Chevalley data (divisor columns or operator matrices) from a JSON file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    if "header" in doc:
        table = RingTable.from_doc(doc)
        if table.chevalley is None:
            raise SchemaError(f"{path}: table document has no operators")
        return table.chevalley
    return chevalley_from_doc(doc)
