from typing import Callable, Dict, Hashable, Iterable, List, Optional, TypeVar

T = TypeVar("T", bound=Hashable)
G = TypeVar("G")


class UnionFind:
    def __init__(self, X: Iterable[T]):
        self.parent: Dict[T, T] = {x: x for x in X}
        self.rank: Dict[T, int] = {x: 0 for x in self.parent}
        self.size: Dict[T, int] = {x: 1 for x in self.parent}

    def __contains__(self, x: T) -> bool:
        return x in self.parent

    def find(self, x: T) -> T:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: T, y: T) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]
        del self.rank[y]

    def reps(self) -> List[T]:
        return list(self.rank)

    def __len__(self) -> int:
        return len(self.rank)


def find_orbits(
    gens: Iterable[G], space: Iterable[T], action: Callable[[G, T], Optional[T]]
) -> UnionFind:
    """
    Orbits of the group generated by gens. An action returning None or a
    point outside the space links nothing.
    """
    uf = UnionFind(space)
    points = list(uf.parent)
    for g in gens:
        for x in points:
            y = action(g, x)
            if y is not None and y in uf:
                uf.union(x, y)
    return uf
