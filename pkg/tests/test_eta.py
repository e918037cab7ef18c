import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eightcolor.eta import (
    EtaFormula,
    EtaTerm,
    euler_f1,
    euler_fk,
    eval_formula,
    load_registry,
    p8_oracle,
    p8_series,
)
from eightcolor.series import MODULUS, Ring, TruncSeries, add, invert, power

from oracles import naive_product, pentagonal_set


class TestEulerProducts:
    def test_f1_first_terms(self):
        assert euler_f1(12).tolist() == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]

    def test_f1_no_q3(self):
        assert euler_f1(10)[3] == 0

    def test_f1_against_raw_product(self):
        assert euler_f1(300).tolist() == naive_product(1, 300)

    def test_f1_support_is_pentagonal(self):
        N = 2000
        coeffs = euler_f1(N).tolist()
        assert set(coeffs) <= {-1, 0, 1}
        assert {n for n, c in enumerate(coeffs) if c} == pentagonal_set(N)

    def test_fk(self):
        assert euler_fk(1, 40) == euler_f1(40)
        assert euler_fk(2, 14).tolist() == [1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]
        f4 = euler_fk(4, 200).tolist()
        assert all(c == 0 for n, c in enumerate(f4) if n % 4)
        assert f4 == naive_product(4, 200)

    def test_mod64_ring(self):
        assert euler_f1(30, Ring.MOD64) == euler_f1(30).to_ring(Ring.MOD64)


class TestEtaTerm:
    def test_zero_exponents_dropped(self):
        assert EtaTerm(1, 0, {1: 0, 2: 3}).factors == ((2, 3),)

    def test_repeated_factors_merge(self):
        assert EtaTerm(1, 0, [(1, 2), (1, -2)]).factors == ()

    def test_invalid(self):
        with pytest.raises(ValueError):
            EtaTerm(1, -1, {1: 1})
        with pytest.raises(ValueError):
            EtaTerm(1, 0, {0: 1})

    def test_dict_round_trip(self):
        t = EtaTerm(-4, 1, {2: 2, 8: 4, 4: -2})
        assert EtaTerm.from_dict(json.loads(json.dumps(t.to_dict()))) == t

    def test_shift_past_order_is_zero(self):
        assert EtaTerm(5, 10, {1: 1}).evaluate(Ring.EXACT, 4).is_zero()


class TestEvalFormula:
    def test_single_f1(self):
        assert eval_formula(EtaFormula([EtaTerm(1, 0, {1: 1})]), Ring.EXACT, 50) == euler_f1(50)

    def test_empty_is_zero(self):
        assert eval_formula(EtaFormula(), Ring.EXACT, 10) == TruncSeries.zeros(10)

    def test_dissection_of_f1_fourth(self):
        rhs = eval_formula(load_registry()["E6"].rhs, Ring.EXACT, 200)
        assert rhs == power(euler_f1(200), 4)

    def test_dissection_of_inverse_fourth(self):
        rhs = eval_formula(load_registry()["E7"].rhs, Ring.EXACT, 200)
        assert rhs == power(invert(euler_f1(200)), 4)

    def test_negative_powers_agree_with_raw_product(self):
        N = 120
        F = EtaFormula([EtaTerm(3, 2, {1: -2, 3: 1})])
        f1 = TruncSeries(naive_product(1, N))
        f3 = TruncSeries(naive_product(3, N))
        expected = 3 * power(invert(f1), 2) * f3
        got = eval_formula(F, Ring.EXACT, N)
        assert got.tolist()[:2] == [0, 0]
        assert got.tolist()[2:] == expected.tolist()[: N - 1]

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 3),
                              st.dictionaries(st.integers(1, 4), st.integers(-6, 6),
                                              max_size=3)),
                    max_size=3),
           st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 3),
                              st.dictionaries(st.integers(1, 4), st.integers(-6, 6),
                                              max_size=3)),
                    max_size=3))
    def test_distributes_over_concatenation(self, xs, ys):
        F = EtaFormula(EtaTerm(*t) for t in xs)
        G = EtaFormula(EtaTerm(*t) for t in ys)
        N = 40
        assert eval_formula(F + G, Ring.EXACT, N) == \
            add(eval_formula(F, Ring.EXACT, N), eval_formula(G, Ring.EXACT, N))


class TestP8:
    def test_small_values(self):
        p = p8_series(Ring.EXACT, 3)
        assert p.tolist() == [1, 8, 44, 192]

    def test_oracle_small(self):
        assert p8_oracle(3) == [1, 8, 44, 192]
        assert p8_oracle(0) == [1]

    def test_oracle_rejects_negative(self):
        with pytest.raises(ValueError):
            p8_oracle(-1)

    def test_series_matches_oracle(self):
        assert p8_series(Ring.EXACT, 600).tolist() == p8_oracle(600)

    def test_mod64_matches_oracle(self):
        got = p8_series(Ring.MOD64, 600).tolist()
        assert got == [v % MODULUS for v in p8_oracle(600)]

    def test_cache_truncates(self):
        long = p8_series(Ring.EXACT, 300)
        assert p8_series(Ring.EXACT, 100) == long.truncate(100)


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("m", range(1, 7))
def test_binomial_congruence(k, m):
    N = 300
    lhs = power(euler_fk(k, N), 2 ** m).tolist()
    rhs = power(euler_fk(2 * k, N), 2 ** (m - 1)).tolist()
    assert all((a - b) % 2 ** m == 0 for a, b in zip(lhs, rhs))


class TestRegistry:
    def test_tags_unique_and_expected(self):
        reg = load_registry()
        for tag in ("E6", "E7", "E1", "E11", "E12", "E020", "E063", "E030", "E031", "E034"):
            assert tag in reg

    def test_round_trip(self):
        from eightcolor.eta import RegistryEntry
        for entry in load_registry().values():
            again = RegistryEntry.from_dict(json.loads(json.dumps(entry.to_dict())))
            assert again.lhs == entry.lhs and again.rhs == entry.rhs
            assert again.lhs_op == entry.lhs_op

    @pytest.mark.parametrize("tag", sorted(load_registry()))
    @pytest.mark.parametrize("N", [150, 300])
    def test_every_identity_at_two_orders(self, tag, N):
        lhs, rhs = load_registry()[tag].evaluate(Ring.EXACT, N)
        assert lhs.order == rhs.order == N
        assert lhs == rhs
