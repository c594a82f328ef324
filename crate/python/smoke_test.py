"""Quick check of the compiled module: python python/smoke_test.py"""

from fractions import Fraction

import iwasawa


def main():
    f = iwasawa.f_series(5, 2, 2, prec=2)
    assert len(f) == 25 and f.p == 5 and f.n == 2
    assert f.mu_lambda() == (0, 0)
    assert f.derivative_nonzero_mod_p()
    assert len(f.coefficients()) == 25

    rows = iwasawa.lambda_table([37], n=1, prec=1)
    assert (37, 32, 0, 1, True) in rows
    assert all(r[2] == 0 for r in rows)

    m = iwasawa.mirimanoff_series(5, 2, 2, 1)
    assert len(m.group_ring()) == 5

    assert iwasawa.theorem5_check(5, 2, 3, 1)
    assert iwasawa.theorem6_check(5, 1, 0, 2, 2)
    assert iwasawa.corollary1_check(7, 2, 2)
    assert iwasawa.interpolation_check(5, 2, 4, 2)
    assert iwasawa.lemma2_identities(5, 2, 1)

    assert iwasawa.bernoulli(12) == Fraction(-691, 2730)
    t = iwasawa.lemma5_trace(31, 5)
    assert t["s_exact"] == Fraction(-10) and t["matches"] and t["square_flag"]
    alpha, confirmed = iwasawa.alpha_class_search(5)
    assert alpha == 2 and len(confirmed) == 10

    assert iwasawa.inv_pi_identity(5, 1)
    assert iwasawa.thm1_tn_identity(5, 1, 4)
    assert iwasawa.stickelberger_projection_check(7, 1, 4)
    assert iwasawa.lemma1_check(5, 1, 4, 2)
    assert iwasawa.theorem4_dn_check(5, 1, 2, 2)

    try:
        iwasawa.lemma5_trace(5, 5)
    except iwasawa.IwasawaError:
        pass
    else:
        raise AssertionError("expected IwasawaError")

    print("smoke test ok")


if __name__ == "__main__":
    main()
