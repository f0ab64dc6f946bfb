from fractions import Fraction
from math import comb, factorial

import pytest

from fernlab.linalg import RationalMatrix
from fernlab.stability import (
    HomologyMap,
    StabilityModel,
    betti,
    stab_matrix,
    transfer_after_stab,
    transfer_matrix,
    verify_dold,
    verify_split_injectivity,
    verify_stability,
    verify_transfer_iso,
)


@pytest.fixture(scope="module")
def m1():
    return StabilityModel(1)


@pytest.fixture(scope="module")
def m2():
    return StabilityModel(2)


class TestBetti:
    def test_point(self):
        for xi in (1, 2, 3):
            assert betti(0, xi, 0) == 1
            assert betti(0, xi, 1) == betti(0, xi, 2) == 0

    def test_connected(self):
        for n, xi in [(1, 1), (2, 2), (3, 3), (5, 1)]:
            assert betti(n, xi, 0) == 1

    def test_examples(self):
        assert betti(2, 2, 1) == 2
        assert betti(1, 1, 1) == 0
        for n in range(2, 6):
            assert betti(n, 1, 1) == 1

    def test_disk_points(self):
        # a single block of xi points is Conf_xi(R^2)/S_xi
        assert betti(1, 3, 1) == 1
        assert betti(1, 3, 2) == 0


class TestMaps:
    def test_stab_degree_zero(self):
        for n in range(0, 4):
            assert stab_matrix(n, 2, 0).matrix == RationalMatrix([[1]])

    def test_stab_full_rank(self):
        s = stab_matrix(2, 2, 1)
        assert s.matrix.shape == (2, 2) and s.rank() == 2
        assert s.source == (2, 2, 1) and s.target == (3, 2, 1)

    def test_transfer_degree_zero(self):
        for n in range(1, 5):
            for m in range(n):
                assert transfer_matrix(n, m, 2, 0).matrix == RationalMatrix([[comb(n, m)]])
        assert transfer_matrix(2, 1, 1, 0).matrix == RationalMatrix([[2]])

    def test_transfer_identity(self, m2):
        assert m2.transfer_matrix(3, 3, 1) == m2.identity(3, 1)

    def test_shapes(self, m2):
        for n in range(1, 5):
            for k in range(3):
                t = m2.t(n, k)
                assert t.matrix.shape == (m2.betti(n - 1, k), m2.betti(n, k))

    def test_compose_checks_types(self, m2):
        with pytest.raises(ValueError):
            m2.stab_matrix(1, 1) @ m2.stab_matrix(1, 1)
        with pytest.raises(ValueError):
            HomologyMap("bogus", (1, 2, 0), (1, 2, 0), RationalMatrix.identity(1))

    def test_naturality(self, m1, m2):
        for model in (m1, m2):
            for n in range(1, 5):
                for m in range(n):
                    chain = model.transfer_chain(n, m, 1)
                    direct = model.transfer_matrix(n, m, 1)
                    assert chain.matrix.scale(Fraction(1, factorial(n - m))) == direct.matrix


class TestDold:
    def test_degree_zero_arithmetic(self, m1):
        # 2 = 1 + 1 on H_0
        lhs = m1.t(2, 0) @ m1.stab_matrix(1, 0)
        rhs = m1.stab_matrix(0, 0) @ m1.t(1, 0) + m1.identity(1, 0)
        assert lhs.matrix == rhs.matrix == RationalMatrix([[2]])

    def test_xi1(self, m1):
        rep = verify_dold(1, 4, 1, m1)
        assert rep.passed and len(rep.checks) > 0

    def test_xi2(self, m2):
        rep = verify_dold(2, 4, 2, m2)
        assert rep.passed, rep.failures()[:1]

    def test_xi2_degree1_j3(self, m2):
        lhs = m2.t(3, 1) @ m2.stab_matrix(2, 1)
        rhs = m2.stab_matrix(1, 1) @ m2.t(2, 1) + m2.identity(2, 1)
        assert lhs.matrix == rhs.matrix
        assert lhs.matrix.shape == (2, 2)

    def test_record_shape(self, m1):
        rec = verify_dold(1, 2, 0, m1).records[0].as_dict()
        assert rec["verdict"] == "pass" and "witness" not in rec
        assert set(rec["params"]) == {"xi", "j", "degree"}


class TestStabilityRanges:
    def test_split_injective(self, m1, m2):
        assert verify_split_injectivity(1, range(0, 5), 2, m1).passed
        assert verify_split_injectivity(2, range(0, 5), 2, m2).passed

    def test_stability_xi2(self, m2):
        rep = verify_stability(2, (2, 4), 1, m2)
        assert rep.passed
        assert [m2.betti(n, 1) for n in (2, 3, 4, 5)] == [2, 2, 2, 2]

    def test_stability_xi1(self, m1):
        assert verify_stability(1, (2, 4), 1, m1).passed

    def test_b2(self, m2):
        assert m2.betti(4, 2) == m2.betti(5, 2)

    def test_transfer_iso(self, m1, m2):
        assert verify_transfer_iso(1, (1, 5), 2, m1).passed
        assert verify_transfer_iso(2, (1, 5), 2, m2).passed
        assert m2.t(3, 1).is_invertible()
        assert m1.t(3, 1).matrix.shape == (1, 1)

    def test_unstable_entries_skipped(self, m1):
        rep = verify_stability(1, (0, 1), 1, m1)
        assert {(r.params["n"], r.params["degree"]) for r in rep.records} == {(0, 0), (1, 0)}


class TestDiagnostic:
    def test_records_never_count(self, m2):
        rep = transfer_after_stab(2, range(0, 4), 2, m2)
        assert rep.checks == [] and rep.passed
        assert all(r.diagnostic and r.witness is not None for r in rep.records)

    def test_degree_zero_scalar(self, m1):
        rec = transfer_after_stab(1, [3], 0, m1).records[0]
        assert rec.passed and rec.params["scalar"] == "4"

    def test_non_scalar_but_invertible(self, m2):
        # j = 2 is stable for k = 1, yet the composite is diag-like, not scalar
        rec = transfer_after_stab(2, [2], 1, m2).records[1]
        assert rec.params["degree"] == 1 and rec.params["stable"]
        assert rec.params["scalar"] is None and rec.params["invertible"]
