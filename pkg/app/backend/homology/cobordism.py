"""
Dotted cobordisms between crossingless matchings, evaluated in a rank-two
Frobenius algebra ``A = K[X] / (X^2 - hX - t)``.

Khovanov's theory is ``h = t = 0``; Lee's deformation is ``h = 0, t = 1``.
A cobordism between two matchings of the same boundary points is assembled
from disks ("pieces") glued along seams. ``reduce`` evaluates closed
components and rewrites the rest as a sum of disks with at most one dot each,
which is the normal form used for morphisms: a morphism is a dict from the
sorted tuple of dotted cycle ids (minimal boundary point of the cycle) to a
field coefficient.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from app.backend.errors import ConsistencyError

Matching = Mapping[int, int]
DotKey = Tuple[int, ...]
Morphism = Dict[DotKey, object]


def cycles(m1: Matching, m2: Matching) -> List[List[int]]:
    """Circles formed by two matchings on the same points, each as its point sequence."""
    seen = set()
    result = []
    for start in sorted(m1):
        if start in seen:
            continue
        cycle = []
        x = start
        while True:
            y = m1[x]
            cycle.extend((x, y))
            seen.update((x, y))
            x = m2[y]
            if x == start:
                break
        result.append(cycle)
    return result


def matching_key(m: Matching) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((a, b) for a, b in m.items() if a < b))


def add_term(morphism: Morphism, key: DotKey, coeff, zero) -> None:
    value = morphism.get(key, zero) + coeff
    if value:
        morphism[key] = value
    else:
        morphism.pop(key, None)


@dataclass(frozen=True)
class FrobeniusAlgebra:
    domain: object
    h: int = 0
    t: int = 0

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def times_x(self, v):
        a, b = v
        return (b * self.domain(self.t), a + b * self.domain(self.h))

    def counit_power(self, k: int):
        """epsilon(X^k)."""
        v = (self.one, self.zero)
        for _ in range(k):
            v = self.times_x(v)
        return v[1]

    def closed_value(self, dots: int, genus: int):
        """X^dots (2X - h)^genus as coordinates on (1, X)."""
        v = (self.one, self.zero)
        for _ in range(dots):
            v = self.times_x(v)
        two, h = self.domain(2), self.domain(self.h)
        for _ in range(genus):
            x = self.times_x(v)
            v = (two * x[0] - h * v[0], two * x[1] - h * v[1])
        return v

    def expand(self, v, boundary: int) -> Dict[Tuple[int, ...], object]:
        """Split an element over ``boundary`` circles by iterated comultiplication.

        Keys are bit tuples (1 = dotted disk on that circle). With no boundary
        the element is capped off by the counit.
        """
        if boundary == 0:
            return {(): v[1]}
        current = {}
        if v[0]:
            current[(0,)] = v[0]
        if v[1]:
            current[(1,)] = v[1]
        h, t = self.domain(self.h), self.domain(self.t)
        for _ in range(boundary - 1):
            following: Dict[Tuple[int, ...], object] = {}

            def put(bits, coeff):
                add_term(following, bits, coeff, self.zero)

            for bits, coeff in current.items():
                head = bits[:-1]
                if bits[-1] == 0:
                    put(head + (0, 1), coeff)
                    put(head + (1, 0), coeff)
                    if self.h:
                        put(head + (0, 0), -h * coeff)
                else:
                    put(head + (1, 1), coeff)
                    if self.t:
                        put(head + (0, 0), t * coeff)
            current = following
        return current

    def reduce(self, dots: Sequence[int], seams: Sequence[Tuple[int, int]],
               boundary_pieces: Sequence[int]) -> List[Tuple[Tuple[int, ...], object]]:
        """Evaluate a glued surface.

        ``dots[p]`` is the dot count on piece p, each seam glues two pieces
        along an arc, and ``boundary_pieces[c]`` names a piece touching
        boundary circle c. Returns (bits per boundary circle, coefficient).
        """
        parent = list(range(len(dots)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in seams:
            parent[find(i)] = find(j)
        components: Dict[int, dict] = {}
        for piece, count in enumerate(dots):
            comp = components.setdefault(find(piece), {'pieces': 0, 'seams': 0, 'dots': 0, 'circles': []})
            comp['pieces'] += 1
            comp['dots'] += count
        for i, _ in seams:
            components[find(i)]['seams'] += 1
        for circle, piece in enumerate(boundary_pieces):
            components[find(piece)]['circles'].append(circle)

        terms = [((0,) * len(boundary_pieces), self.one)]
        for comp in components.values():
            euler = comp['pieces'] - comp['seams']
            boundary = len(comp['circles'])
            twice_genus = 2 - euler - boundary
            if twice_genus < 0 or twice_genus % 2:
                raise ConsistencyError("glued cobordism is not an orientable surface",
                                       euler=euler, boundary=boundary)
            split = self.expand(self.closed_value(comp['dots'], twice_genus // 2), boundary)
            following = []
            for bits, coeff in terms:
                for extra, value in split.items():
                    if not value:
                        continue
                    merged = list(bits)
                    for position, circle in enumerate(comp['circles']):
                        merged[circle] = extra[position]
                    following.append((tuple(merged), coeff * value))
            terms = following
            if not terms:
                break
        return terms


def compose(algebra: FrobeniusAlgebra, f: Morphism, mz: Matching, m: Matching,
            g: Morphism, mw: Matching) -> Morphism:
    """g o f for f: mz -> m and g: m -> mw."""
    first, second, outer = cycles(mz, m), cycles(m, mw), cycles(mz, mw)
    in_first = {p: i for i, c in enumerate(first) for p in c}
    in_second = {p: len(first) + i for i, c in enumerate(second) for p in c}
    seams = [(in_first[x], in_second[x]) for x, y in m.items() if x < y]
    boundary = [in_first[c[0]] for c in outer]
    ids_first = [min(c) for c in first]
    ids_second = [min(c) for c in second]
    ids_outer = [min(c) for c in outer]
    result: Morphism = {}
    for key_f, value_f in f.items():
        dotted_f = set(key_f)
        for key_g, value_g in g.items():
            dotted_g = set(key_g)
            dots = [int(i in dotted_f) for i in ids_first] + [int(i in dotted_g) for i in ids_second]
            for bits, coeff in algebra.reduce(dots, seams, boundary):
                key = tuple(sorted(i for i, bit in zip(ids_outer, bits) if bit))
                add_term(result, key, coeff * value_f * value_g, algebra.zero)
    return result
