import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from alcove_walks import closed_forms as cf
from alcove_walks.errors import ConsistencyError, PreconditionError
from alcove_walks.expoly import ExpPoly, expoly_det
from alcove_walks._linalg import leibniz_det
from alcove_walks.free_counts import binom
from alcove_walks.oracle import circle_dp_count, dp_count, hyperplane_dp_count
from alcove_walks.reflection import circle_reduce, count_alcove
from alcove_walks.weyl_core import ChamberSpec, Family, LatticePoint, StepKind, StepSet, interior_points

H = Fraction(1, 2)
COORD, DIAG, FWD = StepKind.COORDINATE, StepKind.DIAGONAL, StepKind.FORWARD


def test_round_count():
    assert cf.round_count(2.99999) == 3
    assert cf.round_count(-1e-7) == 0
    with pytest.raises(ConsistencyError):
        cf.round_count(2.5)
    with pytest.raises(ConsistencyError):
        cf.round_count(3 + 1e-3j)


class TestGambler:
    def test_first_passage(self):
        assert cf.gambler_first_passage(2, 1, 1) == pytest.approx(0.5, abs=1e-12)
        assert cf.gambler_first_passage(3, 1, 1) == pytest.approx(0.5, abs=1e-12)
        assert cf.gambler_first_passage(3, 1, 3) == pytest.approx(0.125, abs=1e-12)

    def test_position(self):
        assert cf.gambler_position(3, 1, 1, 2) == pytest.approx(0.25, abs=1e-12)
        assert cf.gambler_position(2, 1, 1, 0) == pytest.approx(1.0, abs=1e-12)
        assert cf.gambler_position(3, 1, 2, 1) == pytest.approx(0.5, abs=1e-12)

    def test_one_sided_completeness_fails(self):
        # ruin of one player alone does not exhaust the game
        total = cf.gambler_first_passage(2, 1, 1) + cf.gambler_position(2, 1, 1, 1)
        assert total == pytest.approx(0.5, abs=1e-12)

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            cf.gambler_first_passage(3, 3, 1)
        with pytest.raises(PreconditionError):
            cf.gambler_first_passage(3, 1, 0)
        with pytest.raises(PreconditionError):
            cf.gambler_position(3, 1, 0, 1)


class TestPeriodic:
    def test_binomial_examples(self):
        assert cf.periodic_binomial_sum(0, 2, 1) == pytest.approx(2)
        assert cf.periodic_binomial_sum(1, 2, 2) == pytest.approx(1)
        assert cf.periodic_binomial_sum(H, 2, 1) == pytest.approx(0, abs=1e-12)

    def test_bessel_examples(self):
        f = cf.periodic_bessel_expoly(0, 1)
        assert f.isclose(ExpPoly([(2, 0.5), (-2, 0.5)]))
        assert cf.expoly_extract(f, 0) == pytest.approx(1)
        assert cf.expoly_extract(f, 2) == pytest.approx(4)


class TestIntervalForms:
    def test_tcn_diag_examples(self):
        assert cf.tcn_diag_count([1], [1], 2, 2) == pytest.approx(2)
        assert cf.tcn_diag_count([H], [H], 2, 1) == pytest.approx(0, abs=1e-12)
        assert cf.tcn_diag_count([1], [1], 3, 2) == pytest.approx(0, abs=1e-12)

    def test_tcn_coord_examples(self):
        assert cf.tcn_coord_expoly([1], [1], 2).chop().isclose(ExpPoly.constant(1))
        assert cf.tcn_coord_expoly([1], [1], 3).chop().isclose(ExpPoly([(1, 0.5), (-1, 0.5)]))
        g = cf.tcn_coord_expoly([1], [2], 3).chop()
        assert g.isclose(ExpPoly([(1, 0.5), (-1, -0.5)]))
        assert g.extract(1) == pytest.approx(1)

    def test_tbn_tdn_examples(self):
        assert cf.tbn_coord_expoly([2, 1], [2, 1], 2).chop().isclose(ExpPoly.constant(1))
        assert cf.tbn_coord_expoly([2, 1], [2, 1], 3).extract(2) == pytest.approx(1)
        assert cf.tdn_coord_expoly([1, 0], [2, 0], 2).extract(1) == pytest.approx(1)
        assert cf.tdn_coord_expoly([1, 0], [1, 0], 2).extract(0) == pytest.approx(1)
        assert cf.tdn_coord_expoly([1, 0], [1, 0], 2).extract(2) == pytest.approx(
            dp_count(ChamberSpec(Family.AFFINE_D, 2, 2), StepSet(COORD, 2), [1, 0], [1, 0], 2)
        )

    def test_bn_dn_diag_examples(self):
        assert cf.bn_dn_diag_count("btilde", [2, 1], [2, 1], 2, 3) == pytest.approx(3)
        assert cf.bn_dn_diag_count("btilde", [2, 1], [2, 1], 0, 3) == pytest.approx(1)
        assert cf.bn_dn_diag_count("btilde", [2, 1], [2, 1], 1, 3) == pytest.approx(0, abs=1e-12)
        with pytest.raises(PreconditionError):
            cf.bn_dn_diag_count("ctilde", [2, 1], [2, 1], 1, 3)

    def test_rejects_boundary_and_wrong_lattice(self):
        with pytest.raises(PreconditionError):
            cf.tcn_coord_expoly([3], [1], 3)
        with pytest.raises(PreconditionError):
            cf.tcn_coord_expoly([1], [1], H * 5)
        with pytest.raises(PreconditionError):
            cf.tcn_diag_count([1, H], [1, H], 2, 3)

    def test_unsimplified_tcn_diag_matches(self):
        # difference of cosines, 2^k/4m prefactor, r < 4m
        m, k = 3, 6
        chamber, steps = ChamberSpec(Family.AFFINE_C, 2, m), StepSet(DIAG, 2)
        pts = interior_points(chamber, steps)
        for eta in pts[:4]:
            for lam in pts:
                e, l = [float(c) for c in eta.coords], [float(c) for c in lam.coords]
                mat = [
                    [
                        2**k / (4 * m)
                        * sum(
                            (
                                math.cos(2 * math.pi * r * 2 * (b - a) / (4 * m))
                                - math.cos(2 * math.pi * r * 2 * (-b - a) / (4 * m))
                            )
                            * math.cos(2 * math.pi * r / (4 * m)) ** k
                            for r in range(4 * m)
                        )
                        for b in l
                    ]
                    for a in e
                ]
                assert leibniz_det(mat, 1.0) == pytest.approx(
                    count_alcove(chamber, steps, eta, lam, k), abs=1e-7
                )

    def test_binomial_form_matches(self):
        # det of periodic binomial differences, summed over t directly
        m, k = 2, 5
        chamber, steps = ChamberSpec(Family.AFFINE_C, 2, m), StepSet(DIAG, 2)
        pts = interior_points(chamber, steps)
        for eta in pts:
            for lam in pts:
                mat = [
                    [
                        sum(
                            binom(k, Fraction(k, 2) + b - a + 2 * m * t) - binom(k, Fraction(k, 2) - b - a + 2 * m * t)
                            for t in range(-k, k + 1)
                        )
                        for b in lam.coords
                    ]
                    for a in eta.coords
                ]
                assert leibniz_det(mat, 1) == count_alcove(chamber, steps, eta, lam, k)

    def test_unsimplified_tcn_coord_matches(self):
        m = 3
        chamber, steps = ChamberSpec(Family.AFFINE_C, 2, m), StepSet(COORD, 2)
        for eta in interior_points(chamber):
            for lam in interior_points(chamber):
                mat = [
                    [
                        ExpPoly(
                            (
                                2 * math.cos(2 * math.pi * r / (2 * m)),
                                (
                                    math.cos(2 * math.pi * r * (b - a) / (2 * m))
                                    - math.cos(2 * math.pi * r * (-b - a) / (2 * m))
                                )
                                / (2 * m),
                            )
                            for r in range(2 * m)
                        )
                        for b in lam.coords
                    ]
                    for a in eta.coords
                ]
                g = expoly_det(mat)
                for k in range(7):
                    assert g.extract(k) == pytest.approx(count_alcove(chamber, steps, eta, lam, k), abs=1e-7)


class TestTypeA:
    def test_forward_examples(self):
        assert cf.tan_forward_count([1, 0], [2, 1], 2, 3) == 1
        assert cf.tan_forward_count([1, 0], [2, 1], 2, 2) == 0
        assert cf.tan_forward_count([1, 0], [1, 0], 0, 2) == 1

    @settings(max_examples=20, deadline=None)
    @given(st.sampled_from(list(StepKind)), st.integers(2, 3), st.integers(2, 4), st.data())
    def test_det_sums_match_dp(self, kind, n, m, data):
        chamber, steps = ChamberSpec(Family.AFFINE_A, n, m), StepSet(kind, n)
        eta = list(range(n - 1, -1, -1))
        if eta[0] - eta[-1] >= m:
            return
        lam = [c + data.draw(st.integers(-2, 3)) for c in eta]
        lam = sorted(set(lam), reverse=True)
        if len(lam) != n or lam[0] - lam[-1] >= m:
            return
        counts = cf.tan_det_sum_counts(steps, eta, lam, m, 7)
        assert counts == [dp_count(chamber, steps, eta, lam, k) for k in range(8)]

    def test_finite_a_det_sums(self):
        chamber = ChamberSpec(Family.FINITE_A, 3)
        for kind in StepKind:
            steps = StepSet(kind, 3)
            counts = cf.tan_det_sum_counts(steps, [2, 1, 0], [3, 1, 0], None, 6)
            assert counts == [dp_count(chamber, steps, [2, 1, 0], [3, 1, 0], k) for k in range(7)]

    def test_zero_step_unavailable(self):
        chamber = ChamberSpec(Family.AFFINE_A, 2, 3)
        steps = StepSet(COORD, 2, include_zero_step=True)
        assert cf.closed_form_count(chamber, steps, [1, 0], [1, 0], 2) is None
        with pytest.raises(PreconditionError):
            cf.tan_det_sum_counts(steps, [1, 0], [1, 0], 3, 2)


class TestCircle:
    def test_coord_examples(self):
        g = cf.circle_coord_expoly([1, 0], [1, 0], 3)
        assert g.extract(2) == pytest.approx(2)
        assert g.extract(0) == pytest.approx(1)
        assert g.extract(1) == pytest.approx(0, abs=1e-12)

    def test_diag_examples(self):
        assert cf.circle_diag_count([1, 0], [1, 0], 2, 2) == pytest.approx(2)
        assert cf.circle_diag_count([1, 0], [1, 0], 0, 2) == pytest.approx(1)
        assert cf.circle_diag_count([1, 0], [1, 0], 1, 2) == pytest.approx(0, abs=1e-12)

    def test_forward_lift(self):
        steps = StepSet(FWD, 2)
        assert cf.closed_form_circle_count(4, 2, steps, [1, 0], [2, 1], 2) == 1
        for k in range(9):
            assert cf.closed_form_circle_count(3, 2, steps, [1, 0], [0, 2], k) == circle_dp_count(
                3, 2, steps, [1, 0], [0, 2], k
            )

    @staticmethod
    def _printed_coord(eta, lam, m, k):
        # entries with phase zeta^{-nrv} only
        eta, red = LatticePoint.of(eta), circle_reduce(LatticePoint.of(lam), m)
        n, mn = eta.n, m * eta.n
        zeta = lambda p: cmath.exp(2j * math.pi * p / mn)  # noqa: E731
        s = 1 + min(range(n), key=lambda i: red.doubled[i])
        total = 0
        for u in range(n):
            mat = [
                [
                    ExpPoly(
                        (2 * math.cos(2 * math.pi * (u + n * r) / mn), zeta(-n * r * (b - a)) / m)
                        for r in range(m)
                    )
                    for b in red.coords
                ]
                for a in eta.coords
            ]
            total += zeta(-u * m * s) * expoly_det(mat).extract(k)
        return (total / n).real

    def test_printed_coordinate_form_needs_phase(self):
        steps = StepSet(COORD, 2)
        # balanced displacement: printed and corrected forms agree
        assert self._printed_coord([1, 0], [1, 0], 3, 2) == pytest.approx(2)
        # unbalanced displacement: the printed form misses the count
        truth = circle_dp_count(3, 2, steps, [1, 0], [2, 0], 1)
        assert truth == 1
        assert self._printed_coord([1, 0], [2, 0], 3, 1) != pytest.approx(truth, abs=1e-3)
        assert cf.circle_coord_expoly([1, 0], [2, 0], 3).extract(1) == pytest.approx(truth)

    def test_printed_diagonal_form_needs_phase(self):
        eta, lam, m, k = LatticePoint.of([1, 0]), LatticePoint.of([H * 3, H]), 2, 1
        n, period = 2, 2 * m * 2
        zeta = lambda p: cmath.exp(2j * math.pi * p / period)  # noqa: E731
        red = circle_reduce(lam, m)
        s = 1 + min(range(n), key=lambda i: red.doubled[i])
        total = 0
        for u in range(n):
            mat = [
                [
                    2 ** (k - 1) / m
                    * sum(
                        zeta(-n * r * float(b - a)) * math.cos(math.pi * (u + n * r) / (m * n)) ** k
                        for r in range(2 * m)
                    )
                    for b in red.coords
                ]
                for a in eta.coords
            ]
            total += zeta(-2 * u * m * s) * leibniz_det(mat, 1.0)
        truth = circle_dp_count(m, n, StepSet(DIAG, 2), eta, lam, k)
        assert truth == 1
        assert (total / n).real != pytest.approx(truth, abs=1e-3)
        assert cf.circle_diag_count(eta, lam, k, m) == pytest.approx(truth)

    def test_wrong_cyclic_order_is_zero(self):
        assert cf.circle_coord_expoly([2, 1, 0], [1, 2, 0], 3).extract(0) == 0
        assert cf.circle_diag_count([2, 1, 0], [1, 2, 0], 2, 3) == 0


class TestHyperplane:
    def test_examples(self):
        assert cf.tan_hyperplane_coord_expoly([1, 0], [1, 0], 2).chop().isclose(ExpPoly.constant(1))
        assert cf.tan_hyperplane_coord_expoly([1, 0], [1, 0], 3).extract(2) == pytest.approx(4)
        assert cf.tan_hyperplane_coord_expoly([1, 0], [1, 0], 3).extract(0) == pytest.approx(1)
        assert cf.tan_hyperplane_diag_count([1, 0], [1, 0], 0, 2) == pytest.approx(1)
        assert cf.tan_hyperplane_diag_count([1, 0], [1, 0], 2, 2) == pytest.approx(
            hyperplane_dp_count(2, 2, StepSet(DIAG, 2), [1, 0], [1, 0], 2)
        )
        assert cf.tan_hyperplane_diag_count([1, 0], [1, 0], 1, 2) == pytest.approx(0, abs=1e-12)


class TestDispatch:
    def test_unavailable(self):
        big = ChamberSpec(Family.AFFINE_C, 9, 10)
        steps = StepSet(COORD, 9)
        pt = list(range(9, 0, -1))
        assert cf.closed_form_count(big, steps, pt, pt, 2) is None
        half = ChamberSpec(Family.AFFINE_B, 2, Fraction(5, 2))
        assert cf.closed_form_count(half, StepSet(COORD, 2), [2, 1], [2, 1], 2) is None

    def test_too_large_for_float(self):
        chamber = ChamberSpec(Family.AFFINE_C, 1, 40)
        steps = StepSet(DIAG, 1)
        assert cf.closed_form_count(chamber, steps, [20], [20], 44) is None
        assert cf.closed_form_count(chamber, steps, [20], [20], 20) == count_alcove(chamber, steps, [20], [20], 20)

    def test_finite_a_diagonal_km(self):
        chamber = ChamberSpec(Family.FINITE_A, 2)
        steps = StepSet(DIAG, 2)
        assert cf.closed_form_count(chamber, steps, [1, 0], [1, 0], 4) == dp_count(chamber, steps, [1, 0], [1, 0], 4)
