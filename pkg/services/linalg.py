from typing import Callable, List, Optional, Sequence

from loguru import logger

from coeffring.ring import CoefficientRing, RingElement, SubmoduleIdeal


def _valuation(x: int, p: int, N: int) -> int:
    if x == 0:
        return N
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def solve_mod_prime_power(
    A: Sequence[Sequence[int]], b: Sequence[int], p: int, N: int
) -> Optional[List[int]]:
    """
    Solve A x = b over Z/p^N.

    Z/p^N is a chain ring, so elimination with a pivot of least valuation
    brings A to diagonal form D = U A V with U, V invertible.

    Returns:
        One solution x, or None when the system is inconsistent.
    """
    mod = p**N
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[a % mod for a in row] for row in A]
    rhs = [c % mod for c in b]
    V = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    pivots: List[int] = []

    r = 0
    while r < min(rows, cols):
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                if M[i][j]:
                    v = _valuation(M[i][j], p, N)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        M[r], M[i] = M[i], M[r]
        rhs[r], rhs[i] = rhs[i], rhs[r]
        for row in M:
            row[r], row[j] = row[j], row[r]
        for row in V:
            row[r], row[j] = row[j], row[r]

        unit_inv = pow(M[r][r] // p**v, -1, mod)
        M[r] = [(a * unit_inv) % mod for a in M[r]]
        rhs[r] = (rhs[r] * unit_inv) % mod
        pivot = p**v

        for i2 in range(r + 1, rows):
            if M[i2][r]:
                c = M[i2][r] // pivot
                M[i2] = [(a - c * b_) % mod for a, b_ in zip(M[i2], M[r])]
                rhs[i2] = (rhs[i2] - c * rhs[r]) % mod
        for j2 in range(r + 1, cols):
            if M[r][j2]:
                c = M[r][j2] // pivot
                for row in M:
                    row[j2] = (row[j2] - c * row[r]) % mod
                for row in V:
                    row[j2] = (row[j2] - c * row[r]) % mod
        pivots.append(v)
        r += 1

    y = [0] * cols
    for k, v in enumerate(pivots):
        if rhs[k] % p**v:
            return None
        y[k] = (rhs[k] // p**v) % p ** (N - v)
    for k in range(len(pivots), rows):
        if rhs[k]:
            return None
    return [sum(V[i][k] * y[k] for k in range(cols)) % mod for i in range(cols)]


def coordinates(x: RingElement) -> List[int]:
    """Integer coordinates of x scaled into Z/p^N, N the base truncation level."""
    ring = x.ring
    N = ring.base.N
    out = []
    for c, cap in zip(x.coeffs, ring.caps):
        scale = ring.p ** (N - cap)
        out.extend((a * scale) for a in c)
    return out


def additive_generators(ideal: SubmoduleIdeal) -> List[RingElement]:
    """Generators p^e t^j U^alpha of an ideal as an abelian group."""
    ring = ideal.ring
    gens = []
    for alpha, e in ideal.cells():
        for j in range(ring.base.f):
            w = tuple(1 if i == j else 0 for i in range(ring.base.f))
            gens.append(ring.monomial(alpha, w, a=e))
    return gens


def solve_ring_linear(
    ring: CoefficientRing,
    unknowns: int,
    domain: SubmoduleIdeal,
    linear: Callable[[List[RingElement]], List[RingElement]],
    constant: List[RingElement],
) -> Optional[List[RingElement]]:
    """
    Find u_1..u_n in the domain ideal with linear(u) + constant = 0.

    Args:
        ring: Ring the unknowns and equations live in.
        unknowns: Number of unknown ring elements.
        domain: Ideal each unknown is drawn from.
        linear: An additive map from n ring elements to a list of ring elements.
        constant: The constant term, same length as the output of linear.

    Returns:
        A solution, or None if none exists.
    """
    gens = additive_generators(domain)
    zero = ring.zero()
    columns = []
    for slot in range(unknowns):
        for g in gens:
            args = [zero] * unknowns
            args[slot] = g
            column = []
            for value in linear(args):
                column.extend(coordinates(value))
            columns.append(column)
    rhs = []
    for value in constant:
        rhs.extend(coordinates(-value))
    if not columns:
        return [zero] * unknowns if all(c.is_zero() for c in constant) else None

    A = [[columns[j][i] for j in range(len(columns))] for i in range(len(rhs))]
    x = solve_mod_prime_power(A, rhs, ring.p, ring.base.N)
    if x is None:
        return None
    solution = []
    for slot in range(unknowns):
        value = zero
        for g, coeff in zip(gens, x[slot * len(gens):(slot + 1) * len(gens)]):
            if coeff:
                value = value + g * coeff
        solution.append(value)
    residual = [a + c for a, c in zip(linear(solution), constant)]
    if not all(r.is_zero() for r in residual):
        logger.error("linear solve produced a non-solution")
        raise ValueError("linear solve over Z/p^N failed its own check")
    return solution
