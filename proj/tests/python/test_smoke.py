import pytest

import mfmod2


def test_hecke_on_basis():
    assert mfmod2.hecke_on_basis(3, 47) == [21]
    assert mfmod2.hecke_on_basis(3, 69) == [23, 47, 63]
    assert mfmod2.hecke_apply(3, [47, 69]) == [21, 23, 47, 63]


def test_series_round_trip():
    F = mfmod2.gen("F", 64)
    assert F.exponents() == [1, 9, 25, 49]
    assert str(F) == "prec=64; exps=1,9,25,49"
    assert mfmod2.BitSeries.from_text(str(F)) == F
    D = mfmod2.gen("D", 2000)
    assert mfmod2.decompose(D + mfmod2.gen_Dk(47, 2000)) == [1, 47]
    G = mfmod2.gen("G", 2000)
    F = mfmod2.gen("F", 2000)
    assert mfmod2.agree(mfmod2.power(F + G, 6), F * G)
    assert mfmod2.agree(mfmod2.divide_exact(mfmod2.power(D, 8), G), mfmod2.gen_Dk(3, 2000))


def test_identities():
    results = mfmod2.verify_identities(2000)
    assert results and all(ok for _, ok in results)


def test_code_and_ideals():
    assert mfmod2.pair_to_k(0, 2) == 41
    assert mfmod2.k_to_pair(41) == (0, 2)
    assert len(mfmod2.ideals_of_norm(7)) == 2
    assert mfmod2.di_basis(2) == [[1], [7, 23, 47], [41], [23, 47]]


def test_structure():
    assert mfmod2.express_hecke(7, 6)["text"] == "r = Y; t = 0"
    assert mfmod2.express_hecke(3, 4)["r"] == [(1, 0)]
    assert mfmod2.lambda_series(6) == "X + Y"
    basis = mfmod2.adapted_basis(3)
    assert basis[(0, 0)] == [1]
    assert basis[(1, 0)] == [3]


def test_errors():
    with pytest.raises(mfmod2.DomainError):
        mfmod2.gen_Dk(5, 100)
    with pytest.raises(mfmod2.NotInWError):
        mfmod2.decompose(mfmod2.gen("F", 200))
    with pytest.raises(mfmod2.Error):
        mfmod2.hecke_on_basis(4, 3)


def test_checks():
    ids = mfmod2.checks()
    assert "tables.t3" in ids
    assert mfmod2.run_check("tables.t3") == (True, "16 values")
