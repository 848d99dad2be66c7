"""Brute-force oracles that share no code path with the library's linear solvers."""

from itertools import product

import numpy as np


def hom_count_gf2(M, N) -> int:
    """Number of morphisms ``M -> N`` over GF(2), by trying every tuple of vertex maps."""
    vs = M.bq.vertices
    shapes = [(N.dims[v], M.dims[v]) for v in vs]
    sizes = [r * c for r, c in shapes]
    count = 0
    for bits in product((0, 1), repeat=sum(sizes)):
        pos, f = 0, {}
        for v, (r, c), s in zip(vs, shapes, sizes):
            f[v] = np.array(bits[pos:pos + s], dtype=np.int64).reshape(r, c)
            pos += s
        if all(not np.any((f[a.target] @ M.maps[a.name] - N.maps[a.name] @ f[a.source]) % 2)
               for a in M.bq.arrows):
            count += 1
    return count


def hom_dim_gf2(M, N) -> int:
    return hom_count_gf2(M, N).bit_length() - 1


def perron_root_numpy(c) -> float:
    return float(max(abs(np.linalg.eigvals(np.asarray(c, dtype=float))))) if len(c) else 0.0
