"""Test-only routines: straightening kernel elements into ideal generators."""

from qkquot.kmodule import KClass, kernel_generator, phi_J
from qkquot.rootsys import normalize_J


def straighten(x: KClass, J):
    """Write ``x`` (with ``phi_J(x) = 0``) as ``sum c * g`` over K_i generators, i in J.

    Returns ``(pieces, remainder)`` where ``pieces`` lists ``(c, g, i)`` and
    ``x == sum(c * g) + remainder``; the remainder is the lift of ``phi_J(x)``.
    """
    space = x.space
    J = sorted(normalize_J(J, space.rank))
    pieces = []
    remainder = space.zero()
    for (k, nov), c in x.terms.items():
        u = space.reps[k]
        beta = tuple(nov)
        # walk u down to its minimal representative
        while True:
            step = next((j for j in J if u.has_right_descent(j)), None)
            if step is None:
                break
            pieces.append((c, kernel_generator(space, u, beta, beta, step), step))
            u = u * space.group.s(step)
        # clear the J-coordinates of the Novikov exponent
        for j in J:
            if beta[j - 1] == 0:
                continue
            target = tuple(0 if idx == j - 1 else b for idx, b in enumerate(beta))
            pieces.append((c, kernel_generator(space, u, beta, beta, j), j))
            pieces.append((c, kernel_generator(space, u * space.group.s(j), beta, target, j), j))
            beta = target
        remainder = remainder + space.basis(u, beta, c)
    return pieces, remainder


def recombine(pieces, space):
    out = space.zero()
    for c, g, _ in pieces:
        out = out + g * c
    return out
