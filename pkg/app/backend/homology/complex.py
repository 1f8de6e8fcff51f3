"""
Sparse chain complexes over an exact field with a quantum grading.

Generators carry a homological degree ``i`` and a quantum degree ``j``. For
Khovanov complexes the differential preserves ``j``; for Lee complexes ``j``
is a filtration level and the differential never lowers it.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from app.backend.algebra.linalg import rank
from app.backend.errors import ConsistencyError

logger = logging.getLogger(__name__)

Grading = Tuple[int, int]


@dataclass
class FilteredChainComplex:
    domain: object
    gradings: Dict[int, Grading] = field(default_factory=dict)
    differential: Dict[int, Dict[int, object]] = field(default_factory=dict)
    labels: Dict[int, object] = field(default_factory=dict)

    def add_generator(self, key: int, i: int, j: int, label: object = None) -> None:
        self.gradings[key] = (i, j)
        self.differential.setdefault(key, {})
        if label is not None:
            self.labels[key] = label

    def add_entry(self, source: int, target: int, coeff) -> None:
        if self.gradings[target][0] != self.gradings[source][0] + 1:
            raise ConsistencyError("differential entry does not raise the homological degree by one",
                                   source=source, target=target)
        row = self.differential.setdefault(source, {})
        value = row.get(target, self.domain.zero) + coeff
        if value:
            row[target] = value
        else:
            row.pop(target, None)

    @property
    def size(self) -> int:
        return len(self.gradings)

    def copy(self) -> 'FilteredChainComplex':
        return FilteredChainComplex(self.domain, dict(self.gradings),
                                    {k: dict(v) for k, v in self.differential.items()}, dict(self.labels))

    def generators_in_degree(self, i: int, j: Optional[int] = None) -> List[int]:
        return sorted(k for k, (gi, gj) in self.gradings.items() if gi == i and (j is None or gj == j))

    def homological_degrees(self) -> List[int]:
        return sorted({i for i, _ in self.gradings.values()})

    def preserves_quantum_grading(self) -> bool:
        return all(self.gradings[s][1] == self.gradings[t][1]
                   for s, row in self.differential.items() for t in row)

    def check_d_squared(self) -> None:
        """Raise ConsistencyError unless d o d = 0."""
        zero = self.domain.zero
        for source, row in self.differential.items():
            total: Dict[int, object] = {}
            for middle, c1 in row.items():
                for target, c2 in self.differential.get(middle, {}).items():
                    total[target] = total.get(target, zero) + c1 * c2
            bad = [t for t, v in total.items() if v]
            if bad:
                raise ConsistencyError("d o d is not zero", source=source, targets=bad[:5])

    def matrix(self, sources: List[int], targets: List[int]) -> List[list]:
        """Rows are targets, columns are sources."""
        index = {s: c for c, s in enumerate(sources)}
        rows = [[self.domain.zero] * len(sources) for _ in targets]
        for r, t in enumerate(targets):
            for s in sources:
                coeff = self.differential.get(s, {}).get(t)
                if coeff:
                    rows[r][index[s]] = coeff
        return rows

    def _rank_between(self, sources: List[int], targets: List[int]) -> int:
        if not sources or not targets:
            return 0
        return rank(self.matrix(sources, targets), len(sources), self.domain)

    def homology_ranks(self) -> Dict[Grading, int]:
        """Bigraded homology ranks; requires a quantum-grading-preserving differential."""
        if not self.preserves_quantum_grading():
            raise ConsistencyError("bigraded homology needs a differential preserving the quantum grading")
        ranks: Dict[Grading, int] = {}
        for i, j in sorted(set(self.gradings.values())):
            here = self.generators_in_degree(i, j)
            outgoing = self._rank_between(here, self.generators_in_degree(i + 1, j))
            incoming = self._rank_between(self.generators_in_degree(i - 1, j), here)
            value = len(here) - outgoing - incoming
            if value:
                ranks[(i, j)] = value
        return ranks

    def total_homology_ranks(self) -> Dict[int, int]:
        """Homology rank per homological degree, ignoring the quantum grading."""
        ranks: Dict[int, int] = {}
        for i in self.homological_degrees():
            here = self.generators_in_degree(i)
            value = (len(here) - self._rank_between(here, self.generators_in_degree(i + 1))
                     - self._rank_between(self.generators_in_degree(i - 1), here))
            if value:
                ranks[i] = value
        return ranks


def simplify_complex(c: FilteredChainComplex) -> FilteredChainComplex:
    """Gaussian elimination of every invertible entry between equal quantum degrees.

    Cancelling x -> y with coefficient a replaces d(z -> w) by
    d(z -> w) - d(z -> y) a^-1 d(x -> w) and drops x and y. Only entries with
    equal quantum degree are cancelled, so filtration levels are preserved.
    """
    result = c.copy()
    d = result.differential
    domain = result.domain
    incoming: Dict[int, set] = {k: set() for k in result.gradings}
    for s, row in d.items():
        for t in row:
            incoming[t].add(s)

    pending = deque(sorted(result.gradings))
    queued = set(pending)
    cancelled = 0
    while pending:
        x = pending.popleft()
        queued.discard(x)
        if x not in d:
            continue
        qx = result.gradings[x][1]
        y = next((t for t in sorted(d[x]) if result.gradings[t][1] == qx), None)
        if y is None:
            continue
        inverse = domain.revert(d[x][y])
        row_x = d[x]
        for z in sorted(incoming[y]):
            if z == x:
                continue
            zy = d[z][y]
            row_z = d[z]
            for w, xw in row_x.items():
                if w == y:
                    continue
                value = row_z.get(w, domain.zero) - zy * inverse * xw
                if value:
                    row_z[w] = value
                    incoming[w].add(z)
                else:
                    row_z.pop(w, None)
                    incoming[w].discard(z)
            if z not in queued:
                pending.append(z)
                queued.add(z)
        for gone in (x, y):
            for t in d[gone]:
                incoming[t].discard(gone)
            for s in incoming[gone]:
                d[s].pop(gone, None)
            del d[gone]
            del incoming[gone]
            del result.gradings[gone]
            result.labels.pop(gone, None)
        cancelled += 1
    logger.debug("simplified complex", extra={'before': c.size, 'after': result.size, 'cancelled': cancelled})
    return result
