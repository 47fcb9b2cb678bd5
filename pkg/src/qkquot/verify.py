"""Verification suites shared by the command line and the test-suite.

Each suite returns a list of :class:`Check` records.  A failed check carries
the violated invariant and the witnessing inputs.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import asdict, dataclass, field
from itertools import product as iproduct

from .coeffs import NovikovToZero, specialize
from .errors import NonPolynomialProductError, ReconstructionError
from .grassmannian import (
    GrClass,
    LocalizedGrClass,
    eta_J,
    peterson_phi,
    pontryagin_product_loc,
    pontryagin_translate,
)
from .kmodule import KClass, kernel_generator, module_space, phi_J
from .qkring import (
    RingTable,
    a2_chevalley,
    a2_quotient,
    a2_ring,
    build_ring,
    derive_s2_column,
    load_golden_a2,
)
from .rootsys import Coroot, root_system
from .weyl import AffineWeylElt, affine_length, is_waf_minus, parse_finite, weyl_group

__all__ = ["Check", "SUITES", "run_suite", "quotient_expectations", "bfs_lengths"]

ALL_J = ((), (1,), (2,), (1, 2))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witnesses: list = field(default_factory=list)

    def to_doc(self) -> dict:
        return asdict(self)


def _limit(items, n=5):
    return [str(x) for x in items[:n]]


# -- golden ----------------------------------------------------------------------


def suite_golden(seed: int = 0) -> list:
    table = a2_ring()
    out = []
    for v, want in load_golden_a2().items():
        got = table.product(table.space.group.s(1), v)
        out.append(Check(f"s1 * {v}", got == want, f"{got.pretty()}",
                         [] if got == want else [f"expected {want.pretty()}"]))
    for v, want in derive_s2_column().items():
        got = table.product(table.space.group.s(2), v)
        out.append(Check(f"s2 * {v} (transported)", got == want, f"{got.pretty()}",
                         [] if got == want else [f"expected {want.pretty()}"]))
    return out


# -- ring axioms -----------------------------------------------------------------


def degenerate_table(table: RingTable) -> RingTable:
    """The table with every Novikov variable set to 0."""
    spec = NovikovToZero()
    products = {
        k: KClass(x.space, tuple(specialize(c, spec) for c in x.coeffs))
        for k, x in table.products.items()
    }
    return RingTable(table.space, products)


def ring_checks(table: RingTable, label: str) -> list:
    reps = table.space.reps
    n = table.space.dim
    pairs = [(reps[a], reps[b]) for a, b in table.commutativity_failures()]
    triples = [tuple(reps[k] for k in t) for t in table.associativity_failures()]
    ident = [reps[b] for b in table.identity_failures()]
    poly = [(reps[a], reps[b]) for a, b in table.polynomiality_failures()]
    return [
        Check(f"{label} commutativity ({n * n} pairs)", not pairs, "", _limit(pairs)),
        Check(f"{label} associativity ({n ** 3} triples)", not triples, "", _limit(triples)),
        Check(f"{label} identity ({n} classes)", not ident, "", _limit(ident)),
        Check(f"{label} Q-polynomial structure constants", not poly, "", _limit(poly)),
    ]


def external_checks(T) -> list:
    """Ring axioms for user-supplied Chevalley data; a failed reconstruction is a failed check."""
    label = T.space.type_name
    try:
        table = build_ring(T)
    except (NonPolynomialProductError, ReconstructionError) as exc:
        return [Check(f"{label} reconstruction", False, str(exc), [type(exc).__name__])]
    return [Check(f"{label} reconstruction", True)] + ring_checks(table, label)


def suite_ring(seed: int = 0) -> list:
    table = a2_ring()
    out = ring_checks(table, "A2")
    low = degenerate_table(table)
    out += [Check("Q=0 part " + c.name.split(" ", 1)[1], c.passed, c.detail, c.witnesses)
            for c in ring_checks(low, "Q0")[:3]]
    return out


# -- quotients -------------------------------------------------------------------


def quotient_expectations() -> list:
    """Displayed quotient products: ``(J, lhs, rhs, [(coeff, root, word, Q)])``."""
    return [
        ((1,), "e", "e", [(1, (0, 0), "e", (0, 0))]),
        ((1,), "e", "s2", [(1, (0, 0), "s2", (0, 0))]),
        ((1,), "e", "s1*s2", [(1, (0, 0), "s1*s2", (0, 0))]),
        ((2,), "s1", "s1", [(1, (0, 0), "s1", (0, 0)), (-1, (0, 1), "s1", (0, 0)),
                            (1, (0, 1), "s2*s1", (0, 0))]),
        ((2,), "s1", "e", [(1, (0, 0), "s1", (0, 0))]),
        ((2,), "s1", "s2*s1", [(1, (0, 0), "s2*s1", (0, 0)), (-1, (1, 1), "s2*s1", (0, 0)),
                               (1, (1, 1), "e", (1, 0))]),
        ((1, 2), "e", "e", [(1, (0, 0), "e", (0, 0))]),
    ]


# images of the five full-flag golden products: (rhs of s1 * v, J) -> displayed (lhs, rhs)
_GOLDEN_IMAGES = {
    "s1": {(1,): ("e", "e"), (2,): ("s1", "s1")},
    "s2": {(1,): ("e", "s2"), (2,): ("s1", "e")},
    "s1*s2": {(1,): ("e", "s1*s2"), (2,): ("s1", "s1")},
    "s2*s1": {(1,): ("e", "s2"), (2,): ("s1", "s2*s1")},
    "s1*s2*s1": {(1,): ("e", "s1*s2"), (2,): ("s1", "s2*s1")},
}


def _expected_class(J, terms):
    from .qkring import _class_from_terms

    return _class_from_terms(module_space("A2", J), terms)


def suite_quotient(seed: int = 0) -> list:
    out = []
    expect = {(J, l, r): _expected_class(J, t) for J, l, r, t in quotient_expectations()}
    for (J, l, r), want in expect.items():
        got = a2_quotient(J).product(l, r)
        out.append(Check(f"J={list(J)}: {l} * {r}", got == want, got.pretty(),
                         [] if got == want else [f"expected {want.pretty()}"]))
    # the quotient products are also the phi_J images of the golden products
    golden = load_golden_a2()
    group = weyl_group("A2")
    for word, images in _GOLDEN_IMAGES.items():
        v = parse_finite(word, group)
        for J, (l, r) in images.items():
            img = phi_J(golden[v], J)
            want = expect[(J, l, r)]
            out.append(Check(f"phi_J={list(J)} of s1 * {word}", img == want, img.pretty(),
                             [] if img == want else [f"expected {want.pretty()}"]))
    for J in ((1,), (2,)):
        out += ring_checks(a2_quotient(J), f"J={list(J)}")
    out += homomorphism_checks()
    out += [factorization_check(), ideal_stability_check()]
    return out


def homomorphism_checks() -> list:
    base = a2_ring()
    space = base.space
    out = []
    for J in ALL_J:
        qt = a2_quotient(J)
        bad = []
        for u, v in iproduct(space.reps, space.reps):
            lhs = phi_J(base.product(u, v), J)
            rhs = qt.star(phi_J(space.basis(u), J), phi_J(space.basis(v), J))
            if lhs != rhs:
                bad.append((u, v))
        out.append(Check(f"phi_J={list(J)} is multiplicative on 36 pairs", not bad, "", _limit(bad)))
    return out


def factorization_check(bound: int = 2) -> Check:
    space = module_space("A2")
    bad = []
    for J1, J2 in iproduct(ALL_J, ALL_J):
        if not set(J1) <= set(J2):
            continue
        for u in space.reps:
            for beta in iproduct(range(bound + 1), repeat=2):
                x = space.basis(u, beta)
                if phi_J(x, J2) != phi_J(phi_J(x, J1), J2):
                    bad.append((J1, J2, u, beta))
    return Check(f"phi_J' factors through phi_J (Novikov exponents in [0,{bound}]^2)", not bad, "",
                 _limit(bad))


def ideal_generators(i: int, bound: int = 2):
    space = module_space("A2")
    for u in space.reps:
        for beta in iproduct(range(bound + 1), repeat=2):
            for k in range(bound + 1):
                beta2 = list(beta)
                beta2[i - 1] = k
                yield kernel_generator(space, u, beta, tuple(beta2), i), (u, beta, tuple(beta2))


def ideal_stability_check(bound: int = 2) -> Check:
    T = a2_chevalley()
    bad = []
    count = 0
    for i in (1, 2):
        for j in T.nodes:
            if j == i:
                continue
            for g, witness in ideal_generators(i, bound):
                count += 1
                if not phi_J(T.apply(j, g), {i}).is_zero():
                    bad.append((i, j) + witness)
    return Check(f"K_i stable under A_j, j != i ({count} generators)", not bad, "", _limit(bad))


# -- affine ----------------------------------------------------------------------


def bfs_lengths(type_name: str, radius: int) -> dict:
    """Word length in the generators s_0, ..., s_r by breadth-first search."""
    group = weyl_group(type_name)
    gens = [AffineWeylElt.s0(group)] + [group.s(i).to_affine() for i in group.rs.nodes]
    start = group.identity.to_affine()
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        d = dist[w]
        if d == radius:
            continue
        for g in gens:
            y = w * g
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def suite_affine(seed: int = 0) -> list:
    out = []
    for type_name, radius in (("A2", 8), ("B2", 6)):
        dist = bfs_lengths(type_name, radius)
        bad = [w for w, d in dist.items() if affine_length(w) != d]
        out.append(Check(f"{type_name} length = BFS word length on the radius-{radius} ball "
                         f"({len(dist)} elements)", not bad, "", _limit(bad)))
    group = weyl_group("A2")
    rs = group.rs
    lhs = AffineWeylElt.t(group, -rs.highest_coroot)
    rhs = group.reflection(rs.highest_root).to_affine() * AffineWeylElt.s0(group)
    out.append(Check("t_{-theta^v} = s_theta s_0", lhs == rhs, f"{rhs}"))
    bad = []
    n = 0
    for beta in iproduct(range(-4, 1), repeat=2):
        if not rs.is_strictly_antidominant(Coroot(beta)):
            continue
        for u in group.elements:
            n += 1
            w = AffineWeylElt(u, Coroot(beta))
            if not is_waf_minus(w):
                bad.append(w)
    out.append(Check(f"u t_beta in W_af^- for strictly antidominant beta >= -4 ({n} elements)",
                     not bad, "", _limit(bad)))
    return out


# -- Peterson --------------------------------------------------------------------


def random_presentations(n: int, seed: int = 0) -> list:
    """Random ``(u, beta1, beta2, coeff)`` with ``beta1, beta2`` strictly antidominant."""
    rng = random.Random(seed)
    group = weyl_group("A2")
    rs = group.rs
    ring = module_space("A2").scalars
    cands = [Coroot(b) for b in iproduct(range(-4, 0), repeat=2) if rs.is_strictly_antidominant(Coroot(b))]
    out = []
    for _ in range(n):
        u = rng.choice(group.elements)
        b1, b2 = rng.choice(cands), rng.choice(cands)
        coeff = ring.monomial(weight=(rng.randint(-2, 2), rng.randint(-2, 2)),
                              coeff=rng.choice([-2, -1, 1, 3]))
        out.append((u, b1, b2, coeff))
    return out


def suite_peterson(seed: int = 0, n: int = 100) -> list:
    group = weyl_group("A2")
    rs = group.rs
    space = module_space("A2")
    sample = random_presentations(n, seed)
    bad_phi, bad_eta, bad_prod = [], [], []
    theta = rs.highest_coroot
    for u, b1, b2, c in sample:
        x = LocalizedGrClass(GrClass(group, {AffineWeylElt(u, b1): c}), b2)
        want = space.basis(u, tuple(b1 - b2), c)
        if peterson_phi(x) != want:
            bad_phi.append((u, b1, b2))
        for J in ALL_J:
            if eta_J(x, J) != phi_J(peterson_phi(x), J):
                bad_eta.append((u, b1, b2, J))
        gamma = b2
        t_gamma = LocalizedGrClass(GrClass(group, {AffineWeylElt.t(group, gamma - theta): 1}), -theta)
        via_star = pontryagin_product_loc(x, t_gamma)
        via_rule = LocalizedGrClass(pontryagin_translate(x.numerator, gamma), x.denom)
        if via_star != via_rule:
            bad_prod.append((u, b1, b2, gamma))
    return [
        Check(f"Phi matches the basis rule on {n} presentations", not bad_phi, "", _limit(bad_phi)),
        Check(f"eta_J = phi_J o Phi on {n} presentations, all J", not bad_eta, "", _limit(bad_eta)),
        Check(f"localized product agrees with translation on {n} presentations", not bad_prod, "",
              _limit(bad_prod)),
    ]


SUITES = {
    "golden": suite_golden,
    "ring": suite_ring,
    "quotient": suite_quotient,
    "affine": suite_affine,
    "peterson": suite_peterson,
}


def run_suite(name: str, seed: int = 0) -> list:
    if name == "all":
        out = []
        for key in SUITES:
            out += [Check(f"[{key}] {c.name}", c.passed, c.detail, c.witnesses)
                    for c in SUITES[key](seed)]
        return out
    return SUITES[name](seed)
