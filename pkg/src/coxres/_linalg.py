"""Exact row reduction over Q or a cyclotomic field.

Vectors are dicts ``{key: scalar}`` with zero entries dropped, which suits
polynomials viewed as coefficient vectors on monomials.
"""

from __future__ import annotations

from .cyclotomic import as_scalar


class EchelonBasis:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    ``order_key`` ranks coordinates; each stored vector has a distinct pivot
    (its largest coordinate) with coefficient 1.
    """

    def __init__(self, order_key):
        self.key = order_key
        self.rows: dict = {}  # pivot -> vector

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: c for k, c in vec.items() if c != 0}
        while v:
            done = True
            for k in sorted(v, key=self.key, reverse=True):
                row = self.rows.get(k)
                if row is not None:
                    c = v[k]
                    for kk, cc in row.items():
                        x = as_scalar(v.get(kk, 0) - c * cc)
                        if x == 0:
                            v.pop(kk, None)
                        else:
                            v[kk] = x
                    done = False
                    break
            if done:
                break
        return v

    def add(self, vec: dict) -> dict | None:
        """Insert ``vec``; return the new (normalized) row, or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        piv = max(v, key=self.key)
        inv = 1 / v[piv]
        v = {k: as_scalar(c * inv) for k, c in v.items()}
        # keep rows fully reduced so the basis is canonical
        for p, row in self.rows.items():
            c = row.get(piv)
            if c:
                for kk, cc in v.items():
                    x = as_scalar(row.get(kk, 0) - c * cc)
                    if x == 0:
                        row.pop(kk, None)
                    else:
                        row[kk] = x
        self.rows[piv] = v
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict]:
        """Rows sorted by pivot, largest first."""
        return [self.rows[p] for p in sorted(self.rows, key=self.key, reverse=True)]


def rank(vectors, order_key=lambda k: k) -> int:
    e = EchelonBasis(order_key)
    for v in vectors:
        e.add(v)
    return len(e)


def nullspace(columns: list[dict], order_key=lambda k: k) -> list[list]:
    """Basis of {c : sum_i c_i * columns[i] = 0} as dense coefficient lists."""
    n = len(columns)
    # augment each column with a tag coordinate recording the combination
    e = EchelonBasis(lambda k: (1, order_key(k[1])) if k[0] == "v" else (0, -k[1]))
    out = []
    for i, col in enumerate(columns):
        v = {("v", k): c for k, c in col.items()}
        v[("t", i)] = 1
        r = e.reduce(v)
        if r and all(k[0] == "t" for k in r):
            out.append([as_scalar(r.get(("t", j), 0)) for j in range(n)])
        else:
            e.add(v)
    return out
