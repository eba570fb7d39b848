from services.union_find import UnionFind, find_orbits


def test_union_find():
    uf = UnionFind(range(6))
    uf.union(0, 1)
    uf.union(2, 3)
    uf.union(1, 3)
    assert 3 == len(uf)
    assert uf.find(0) == uf.find(2)
    assert uf.find(4) != uf.find(5)
    assert 4 == uf.size[uf.find(0)]
    assert 6 not in uf


def test_orbits_of_translations():
    orbits = find_orbits([4], range(12), lambda g, x: (x + g) % 12)
    assert 4 == len(orbits)
    assert {orbits.find(x) for x in (1, 5, 9)} == {orbits.find(1)}


def test_actions_leaving_the_space_link_nothing():
    orbits = find_orbits([1], range(5), lambda g, x: x + g if x + g < 5 else None)
    assert 1 == len(orbits)
    orbits = find_orbits([10], range(5), lambda g, x: x + g)
    assert 5 == len(orbits)
