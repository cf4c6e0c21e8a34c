"""The oracles themselves, checked on textbook cases."""

from pfisterkit.oracles import (eval_series_form, hilbert_bruteforce, is_square_mod, laurent_zero_bruteforce,
                                rational_zero_bruteforce, root_count_mod_p, splits_mod_p)


def test_hilbert_oracle_textbook_values():
    assert hilbert_bruteforce(-1, -1, 2) == -1
    assert hilbert_bruteforce(-1, -1, 3) == 1
    assert hilbert_bruteforce(2, 3, 3) == -1     # 2 is not a square mod 3
    assert hilbert_bruteforce(2, 5, 5) == -1
    assert hilbert_bruteforce(2, 7, 7) == 1      # 3^2 = 2 mod 7
    assert hilbert_bruteforce(5, 5, 5) == 1      # (5, -5) = 1 and (5, -1) = 1 at 5
    assert hilbert_bruteforce(3, 3, 2) == -1
    for p in (3, 5, 7):
        assert hilbert_bruteforce(1, p, p) == 1


def test_rational_zero_oracle():
    z = rational_zero_bruteforce([1, 1, -1], 10)
    assert z is not None and z[0] ** 2 + z[1] ** 2 == z[2] ** 2 and any(z)
    assert rational_zero_bruteforce([1, 1, 1], 20) is None
    assert rational_zero_bruteforce([1, 1, -3], 30) is None
    z = rational_zero_bruteforce(["1/2", 2, -1], 10)
    assert z is not None


def test_laurent_oracle():
    # <1, -1> has the zero (1, 1); <1, -2> over F_5[[u]] has none since 2 is not a square mod 5
    z = laurent_zero_bruteforce([[1], [4]], 5, order=6)
    assert z is not None and eval_series_form([[1], [4]], z, 5, 6) == [0] * 6
    assert laurent_zero_bruteforce([[1], [3]], 5, order=6) is None
    # <1, -u> has no zero: the two terms have values of different parity
    assert laurent_zero_bruteforce([[1], [0, 4]], 5, order=6) is None


def test_root_counting():
    assert root_count_mod_p([1, 0, 1], 5) == 2
    assert root_count_mod_p([1, 0, 1], 3) == 0
    assert splits_mod_p([-2, 0, 1], 7) and not splits_mod_p([-2, 0, 1], 5)
    assert is_square_mod(17, 32) and not is_square_mod(3, 8)
