from twocurv import words as W


def w(s):
    return W.from_string(s)


def test_letters_round_trip():
    assert W.to_string(w("aBcD")) == "aBcD"
    assert w("aB") == (1, -2)


def test_free_and_cyclic_reduction():
    assert W.free_reduce(w("abBA")) == ()
    assert W.free_reduce(w("aabBc")) == w("aac")
    assert W.cyclic_reduce(w("bacB")) == w("ac")
    assert W.cyclic_reduce(w("aA")) == ()


def test_proper_powers():
    assert W.is_proper_power(w("aaaaaa")) == (w("a"), 6)
    assert W.is_proper_power(w("abab")) == (w("ab"), 2)
    assert W.is_proper_power(w("bbaaccabc")) is None
    assert W.is_proper_power(w("baba")) == (w("ba"), 2)


def test_cyclic_equality():
    assert W.cyclic_equal(w("abc"), w("cab"), False)
    assert W.cyclic_equal(w("ab"), w("BA"), True)
    assert not W.cyclic_equal(w("ab"), w("bA"), True)
    assert not W.cyclic_equal(w("ab"), w("BA"), False)


def test_least_rotation_and_canonical():
    assert W.least_rotation((3, 1, 2)) == (1, 2, 3)
    assert W.cyclic_canonical(w("ab"), True) == W.cyclic_canonical(w("BA"), True)
