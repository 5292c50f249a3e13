"""NumPy fallback kernels, signature-compatible with the compiled ones."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.spatial.distance import cdist


def pagerank(indptr, indices, weights, bias, alpha, tol, max_iter):
    """Damped power iteration x <- alpha*M@x + (1-alpha)*bias.

    M is given in CSR form; weights must already hold the edge weight
    divided by the source node's weighted degree, so each matvec term
    is w_ij/deg(j) * x[j]. Returns (scores, iterations, residual);
    iteration stops once the L1 step change drops to tol.
    """
    n = len(bias)
    bias = np.asarray(bias, dtype=np.float64)
    matrix = sp.csr_matrix(
        (np.asarray(weights, dtype=np.float64),
         np.asarray(indices, dtype=np.int64),
         np.asarray(indptr, dtype=np.int64)),
        shape=(n, n))
    teleport = (1.0 - alpha) * bias
    x = np.full(n, 1.0 / n)
    residual = np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        x_new = alpha * (matrix @ x) + teleport
        residual = float(np.abs(x_new - x).sum())
        x = x_new
        if residual <= tol:
            break
    return x, iterations, residual


def rwmd_pairwise(vectors, offsets, masses):
    """Symmetric matrix of relaxed transport distances between bags.

    Bag b spans rows offsets[b]:offsets[b+1] of vectors/masses. The
    one-sided cost sends each unit of mass to its nearest stem on the
    other side under Euclidean distance; the entry is the max of the
    two sides. All bags must be non-empty.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    masses = np.asarray(masses, dtype=np.float64)
    offsets = np.asarray(offsets, dtype=np.int64)
    n = len(offsets) - 1
    out = np.zeros((n, n))
    for i in range(n):
        vi = vectors[offsets[i]:offsets[i + 1]]
        mi = masses[offsets[i]:offsets[i + 1]]
        for j in range(i + 1, n):
            vj = vectors[offsets[j]:offsets[j + 1]]
            mj = masses[offsets[j]:offsets[j + 1]]
            cost = cdist(vi, vj)
            r1 = float(mi @ cost.min(axis=1))
            r2 = float(mj @ cost.min(axis=0))
            out[i, j] = out[j, i] = max(r1, r2)
    return out
