import numpy as np
import pytest

from projnorm import (
    InvalidParameter,
    MissingLabels,
    NotEquivariant,
    build_counterexample_2d,
    build_pyramid_partition,
    build_uniform_square,
    convergence_study,
    exact_operator_norm,
    growth_sweep,
    limit_solution_2d,
    limit_system_2d,
    limit_system_pyramid,
    normalized_system,
    oscillating_data,
    project,
    reduce_by_symmetry,
    reduced_ring_system,
    ring_rotation_permutation,
    sweep_to_csv,
    symmetry_orbits,
    vertex_roles,
)
from projnorm.mesh import OrbitPartition


class TestOscillatingData:
    def test_ring_values(self):
        mesh = build_counterexample_2d(2, 0.3)
        f = oscillating_data(mesh)
        ring, _, _, _ = vertex_roles(mesh)
        simplex_ring = ring[mesh.simplices].max(axis=1)
        # rings 1, 2 and the inner fan (ring 3): values -1, +1, -1 going inward
        for r, expect in [(1, -1.0), (2, 1.0), (3, -1.0)]:
            assert (f.values[simplex_ring == r] == expect).all()
        assert f.sup_norm == 1.0

    def test_counts_for_one_ring(self):
        mesh = build_counterexample_2d(1, 0.5)
        f = oscillating_data(mesh)
        assert int((f.values == -1.0).sum()) == 8
        assert int((f.values == 1.0).sum()) == 4

    def test_pyramid_inherits_base_pattern(self):
        base = build_counterexample_2d(2, 0.3)
        pyr = build_pyramid_partition(2, 0.3, 4)
        assert np.array_equal(
            oscillating_data(pyr).values, oscillating_data(base).values
        )

    def test_requires_labels(self):
        with pytest.raises(MissingLabels):
            oscillating_data(build_uniform_square(2))


class TestReduction:
    def test_identity_orbits_reproduce_system(self):
        mesh = build_counterexample_2d(1, 0.3)
        system = normalized_system(mesh, oscillating_data(mesh))
        orbits = symmetry_orbits(mesh, np.arange(mesh.n_vertices))
        reduced = reduce_by_symmetry(system, orbits)
        assert np.array_equal(reduced.matrix, system.A)
        assert np.array_equal(reduced.rhs, system.b)

    @pytest.mark.parametrize("J,t", [(1, 0.3), (4, 0.1), (6, 0.01)])
    def test_expansion_matches_full_solution_2d(self, J, t):
        mesh = build_counterexample_2d(J, t)
        full = project(mesh, oscillating_data(mesh)).nodal_values
        reduced = reduced_ring_system(mesh)
        assert reduced.n_orbits == J + 2
        expanded = reduced.expand(reduced.solve())
        assert np.abs(expanded - full).max() < 1e-9 * np.abs(full).max()

    @pytest.mark.parametrize("d", [3, 4])
    def test_expansion_matches_full_solution_pyramid(self, d):
        mesh = build_pyramid_partition(2, 0.1, d)
        full = project(mesh, oscillating_data(mesh)).nodal_values
        reduced = reduced_ring_system(mesh)
        assert reduced.n_orbits == 2 + 3
        expanded = reduced.expand(reduced.solve())
        assert np.abs(expanded - full).max() < 1e-9 * np.abs(full).max()

    def test_reduced_2d_matrix_is_tridiagonal(self):
        mesh = build_counterexample_2d(5, 0.1)
        reduced = reduced_ring_system(mesh)
        k = reduced.n_orbits
        off = np.abs(np.subtract.outer(np.arange(k), np.arange(k))) > 1
        assert np.abs(reduced.matrix[off]).max() == 0.0

    def test_orbit_order_follows_rings(self):
        # orbit r collects ring r, so the reduced unknowns read outward-in
        mesh = build_counterexample_2d(3, 0.2)
        orbits = symmetry_orbits(mesh, ring_rotation_permutation(mesh))
        ring, _, _, _ = vertex_roles(mesh)
        assert np.array_equal(orbits.orbit_of, ring)

    def test_rejects_non_equivariant_orbits(self):
        mesh = build_counterexample_2d(2, 0.3)
        system = normalized_system(mesh, oscillating_data(mesh))
        n = mesh.n_vertices
        # pool the center with an outer corner: rows cannot agree
        orbits = [np.array([0, n - 1])] + [np.array([v]) for v in range(1, n - 1)]
        orbit_of = np.zeros(n, dtype=np.int64)
        for k, orb in enumerate(orbits):
            orbit_of[orb] = k
        bad = OrbitPartition(orbits=orbits, generators=[], orbit_of=orbit_of)
        with pytest.raises(NotEquivariant):
            reduce_by_symmetry(system, bad)


class TestLimitSystems:
    def test_2d_smallest_case_is_explicit(self):
        lim = limit_system_2d(1)
        assert np.array_equal(
            lim.matrix, [[1.5, 0.5, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 1.0]]
        )
        assert np.array_equal(lim.rhs, [-2.0, -2.0, 2.0])

    @pytest.mark.parametrize("J", [1, 2, 5, 12, 20])
    def test_solution_matches_closed_form(self, J):
        x = limit_system_2d(J).solve()
        assert np.abs(x - limit_solution_2d(J)).max() < 1e-12

    def test_closed_form_values(self):
        assert np.array_equal(limit_solution_2d(3), [-1.0, -1.0, 3.0, -5.0, 7.0])
        assert np.abs(limit_solution_2d(8)).max() == 2 * 8 + 1

    def test_pyramid_smallest_case_is_explicit(self):
        lim = limit_system_pyramid(1, 3)
        assert np.array_equal(
            lim.matrix,
            [
                [1.5, 0.5, 0.0, 0.5],
                [1.0, 1.0, 0.0, 0.5],
                [0.0, 1.0, 1.0, 0.5],
                [1.0, 0.5, 0.0, 1.0],
            ],
        )
        assert np.array_equal(lim.rhs, [-2.5, -2.5, 2.5, -2.5])

    def test_pyramid_apex_row_scales_with_dimension(self):
        lim = limit_system_pyramid(1, 4)
        assert lim.matrix[-1, -1] == 1.5
        assert lim.matrix[0, -1] == 1.0
        assert np.array_equal(lim.rhs, [-3.0, -3.0, 3.0, -3.0])

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_pyramid_solution_structure(self, d):
        # first two ring values and the apex value all equal -1, the
        # remaining entries alternate in sign and grow
        for J in (1, 3, 6):
            x = limit_system_pyramid(J, d).solve()
            assert abs(x[0] + 1) < 1e-12
            assert abs(x[1] + 1) < 1e-12
            assert abs(x[-1] + 1) < 1e-12
            rings = x[:-1]
            assert (np.sign(rings[1:]) == (-1.0) ** np.arange(1, J + 2)).all()
            mags = np.abs(rings[1:])
            assert (np.diff(mags) > 0).all()

    def test_pyramid_growth_rate_exceeds_2d_rate(self):
        sups3 = [np.abs(limit_system_pyramid(J, 3).solve()).max() for J in range(1, 9)]
        slope = np.polyfit(range(1, 9), sups3, 1)[0]
        assert slope > 2.0

    def test_parameter_validation(self):
        with pytest.raises(InvalidParameter):
            limit_system_2d(0)
        with pytest.raises(InvalidParameter):
            limit_solution_2d(0)
        with pytest.raises(InvalidParameter):
            limit_system_pyramid(1, 2)


class TestLimitConsistency:
    def test_reduced_system_approaches_2d_limit(self):
        lim = limit_system_2d(3)
        devs = []
        for t in (0.04, 0.02, 0.01):
            red = reduced_ring_system(build_counterexample_2d(3, t))
            devs.append(np.abs(red.matrix - lim.matrix).max())
        assert devs[0] > devs[1] > devs[2]
        # dominant deviating entry vanishes linearly in t
        assert 0.4 < devs[2] / devs[1] < 0.6

    @pytest.mark.parametrize("d", [3, 4])
    def test_reduced_system_approaches_pyramid_limit(self, d):
        lim = limit_system_pyramid(3, d)
        red = reduced_ring_system(build_pyramid_partition(3, 1e-3, d))
        assert np.abs(red.matrix - lim.matrix).max() < 0.05
        assert np.abs(red.rhs - lim.rhs).max() < 0.05


class TestSweeps:
    def test_convergence_study_approaches_limit(self):
        records = convergence_study(2, [0.2, 0.1, 0.05])
        errs = [r.limit_error for r in records]
        assert errs[0] > errs[1] > errs[2]
        assert all(r.exact_operator_norm is None for r in records)

    def test_convergence_study_near_limit_value(self):
        (rec,) = convergence_study(2, [1e-3])
        assert abs(rec.sup_norm - 5.0) <= 0.1

    def test_growth_sweep_2d(self):
        records = growth_sweep(range(1, 6), 0.01)
        for r in records:
            assert r.sup_norm >= 2 * r.J
            assert r.limit_error is None

    def test_growth_sweep_with_norms(self):
        records = growth_sweep([1, 2], 0.1, with_norms=True)
        for r in records:
            assert r.exact_operator_norm is not None
            assert r.ainv_bound is not None
            assert r.sup_norm <= r.exact_operator_norm + 1e-9
            assert r.exact_operator_norm <= r.ainv_bound + 1e-9

    def test_growth_sweep_pyramid_increases(self):
        records = growth_sweep(range(2, 7), 0.01, d=3)
        sups = [r.sup_norm for r in records]
        assert all(b > a for a, b in zip(sups, sups[1:]))

    def test_finite_t_drift_at_large_J(self):
        # at fixed t = 0.01 the witness sup falls short of the limit value
        # 2J+1 by an amount growing like t J^2: it drops below 2J at J = 8
        # while the exact operator norm still exceeds 2J
        mesh = build_counterexample_2d(8, 0.01)
        sup = project(mesh, oscillating_data(mesh)).sup_norm
        assert 2 * 8 - 0.1 < sup < 2 * 8
        assert exact_operator_norm(mesh)[0] >= 2 * 8

    def test_csv_format(self):
        records = growth_sweep([1], 0.3) + convergence_study(1, [0.2])
        text = sweep_to_csv(records)
        lines = text.strip().split("\n")
        assert lines[0] == "J,t,d,sup_norm,exact_operator_norm,limit_error,ainv_bound"
        first = lines[1].split(",")
        assert first[0] == "1" and first[2] == "2"
        assert first[4] == "" and first[5] == ""  # norms not requested
        second = lines[2].split(",")
        assert second[5] != ""  # limit_error present
        assert len(second[3].replace(".", "").replace("-", "").lstrip("0")) <= 12
