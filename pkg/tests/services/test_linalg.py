from coeffring.presentation import parse_ring
from coeffring.ring import maximal_ideal_power
from services.linalg import additive_generators, coordinates, solve_mod_prime_power, solve_ring_linear


def test_solve_mod_prime_power():
    (x,) = solve_mod_prime_power([[5]], [10], 5, 3)
    assert 10 == 5 * x % 125
    assert solve_mod_prime_power([[5]], [1], 5, 3) is None


def test_solve_mod_prime_power_system():
    A = [[1, 2], [3, 9]]
    b = [4, 6]
    x = solve_mod_prime_power(A, b, 3, 3)
    assert [4, 6] == [sum(a * c for a, c in zip(row, x)) % 27 for row in A]


def test_solve_ring_linear():
    R = parse_ring("witt(3,1,3); vars U; rel U^2")
    m = maximal_ideal_power(R, 1)
    U = R.var("U")

    def linear(args):
        (s,) = args
        return [s * 3]

    # 3 s = 9 U + 9 has a solution with s in m
    (s,) = solve_ring_linear(R, 1, m, linear, [-(U * 9 + 9)])
    assert m.contains(s)
    assert U * 9 + 9 == s * 3
    assert solve_ring_linear(R, 1, m, linear, [R.one()]) is None


def test_coordinates_and_generators():
    R = parse_ring("witt(3,1,3); vars U; rel U^2")
    assert len(R.monomials) * R.base.f == len(coordinates(R.one()))
    assert [1, 0] == coordinates(R.one())
    gens = additive_generators(maximal_ideal_power(R, 1))
    assert all(maximal_ideal_power(R, 1).contains(g) for g in gens)
