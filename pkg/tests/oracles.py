"""Independent reference computations used to cross-check the library.

Nothing here shares code with the closed-form assembly paths under test:
mass matrices and loads are integrated with a tensor Gauss-Legendre rule
mapped onto the simplex (Duffy transform), absolute integrals of splines are
approximated by centroid rules on fine self-similar subdivisions, and witness
norms are found by brute force over all cellwise sign patterns.
"""

import itertools
import math

import numpy as np


def simplex_quadrature(d, n=8):
    """Barycentric points and weights on the reference d-simplex.

    Tensor Gauss-Legendre points on [0,1]^d mapped by the Duffy transform
    x_k = u_k * prod_{l<k} (1 - u_l); weights sum to the reference volume
    1/d!.  Exact for polynomials well beyond degree 2 for n >= 8.
    """
    x, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    grids = np.meshgrid(*([x] * d), indexing="ij")
    wgrids = np.meshgrid(*([w] * d), indexing="ij")
    U = np.column_stack([g.ravel() for g in grids])
    W = np.prod(np.column_stack([g.ravel() for g in wgrids]), axis=1)
    X = np.empty_like(U)
    remaining = np.ones(U.shape[0])
    for k in range(d):
        X[:, k] = U[:, k] * remaining
        remaining = remaining * (1.0 - U[:, k])
        if k < d - 1:
            W = W * (1.0 - U[:, k]) ** (d - 1 - k)
    bary = np.column_stack([1.0 - X.sum(axis=1), X])
    return bary, W


def quadrature_mass_matrix(mesh, n=8):
    """Dense mass matrix from numerical quadrature of the hat products."""
    d = mesh.dim
    bary, W = simplex_quadrature(d, n)
    local = (bary * W[:, None]).T @ bary  # reference integrals of lambda_a lambda_b
    nv = mesh.n_vertices
    M = np.zeros((nv, nv))
    for row in mesh.simplices:
        coords = mesh.vertices[row]
        detE = abs(np.linalg.det(coords[1:] - coords[0]))
        M[np.ix_(row, row)] += detE * local
    return M


def quadrature_load(mesh, values, n=8):
    """Load vector from numerical quadrature against cellwise-constant data."""
    d = mesh.dim
    bary, W = simplex_quadrature(d, n)
    local = W @ bary  # reference integrals of lambda_a
    values = np.asarray(values, dtype=float)
    F = np.zeros(mesh.n_vertices)
    for s, row in enumerate(mesh.simplices):
        coords = mesh.vertices[row]
        detE = abs(np.linalg.det(coords[1:] - coords[0]))
        F[row] += values[s] * detE * local
    return F


def _subdivide_reference_triangle(k):
    """Vertices (barycentric) of the k^2 congruent subtriangles of a triangle."""
    tris = []
    for i in range(k):
        for j in range(k - i):
            a = (i, j)
            tris.append((a, (i + 1, j), (i, j + 1)))
            if i + j < k - 1:
                tris.append(((i + 1, j), (i + 1, j + 1), (i, j + 1)))
    out = []
    for tri in tris:
        out.append([(1.0 - (i + j) / k, i / k, j / k) for i, j in tri])
    return np.array(out)  # (n_sub, 3, 3)


def subdivision_abs_integral(mesh, nodal, k=256):
    """Centroid-rule approximation of the integral of |spline|.

    Each simplex is split into k (1D) or k^2 (2D) self-similar pieces; on
    pieces not crossed by the zero line the centroid rule is exact, so the
    error comes only from the O(k) crossing pieces and is O(1/k^2) overall.
    """
    nodal = np.asarray(nodal, dtype=float)
    total = 0.0
    if mesh.dim == 1:
        for s, row in enumerate(mesh.simplices):
            a, b = nodal[row]
            h = float(mesh.simplex_volumes[s]) / k
            mids = a + (np.arange(k) + 0.5) / k * (b - a)
            total += h * np.abs(mids).sum()
        return total
    if mesh.dim == 2:
        sub = _subdivide_reference_triangle(k)
        centroids = sub.mean(axis=1)  # (n_sub, 3) barycentric
        area_frac = 1.0 / k**2
        for s, row in enumerate(mesh.simplices):
            vals = centroids @ nodal[row]
            total += float(mesh.simplex_volumes[s]) * area_frac * np.abs(vals).sum()
        return total
    raise NotImplementedError("subdivision oracle implemented for d = 1, 2")


def brute_force_witness(mesh, mass_dense):
    """Max sup norm of the projection over all cellwise +-1 data patterns.

    Exhaustive over 2^m patterns, so only usable for small simplex counts.
    Returns (best sup norm, best pattern).
    """
    m = mesh.n_simplices
    d = mesh.dim
    # load map: column s spreads volume/(d+1) onto the vertices of simplex s
    L = np.zeros((mesh.n_vertices, m))
    for s, row in enumerate(mesh.simplices):
        L[row, s] += mesh.simplex_volumes[s] / (d + 1)
    patterns = np.array(list(itertools.product((-1.0, 1.0), repeat=m)))
    X = np.linalg.solve(mass_dense, L @ patterns.T)
    sups = np.abs(X).max(axis=0)
    best = int(np.argmax(sups))
    return float(sups[best]), patterns[best]


def random_interval_mesh(rng, max_segments=50, max_ratio=1e6):
    """Interval partition with segment-length ratios up to max_ratio."""
    n = int(rng.integers(1, max_segments + 1))
    lengths = 10.0 ** rng.uniform(0.0, math.log10(max_ratio), size=n)
    return np.concatenate([[0.0], np.cumsum(lengths)])


def jittered_square_vertices(rng, n, amplitude=0.25):
    """Uniform-grid vertex coordinates perturbed without flipping triangles."""
    xs = np.linspace(0.0, 1.0, n + 1)
    gx, gy = np.meshgrid(xs, xs, indexing="xy")
    verts = np.column_stack([gx.ravel(), gy.ravel()])
    return verts + rng.uniform(-amplitude / n, amplitude / n, size=verts.shape) * 0.3


def random_simplex_vertices(rng, d, min_volume=0.05):
    """Coordinates of a single nondegenerate d-simplex."""
    while True:
        coords = rng.uniform(-1.0, 1.0, size=(d + 1, d))
        vol = abs(np.linalg.det(coords[1:] - coords[0])) / math.factorial(d)
        if vol >= min_volume:
            return coords
