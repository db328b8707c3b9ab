import pytest
from hypothesis import given, strategies as st

from purelint.oracles import TwinPair, caesar_encode, is_prime_trial, remove_multiples, sieve, twin_primes


def recursive_sieve(xs):
    # the head-filter definition, written out literally
    return [] if not xs else [xs[0]] + recursive_sieve([v for v in xs[1:] if v % xs[0] != 0])


@pytest.mark.parametrize("n,s,expected", [(3, "abc", "def"), (2, "yz!", "ab!"), (0, "Hi, you", "Hi, you"),
                                          (-1, "abc", "zab"), (29, "abc", "def")])
def test_caesar_examples(n, s, expected):
    assert caesar_encode(n, s) == expected


@given(st.integers(-1000, 1000), st.text())
def test_caesar_properties(n, s):
    enc = caesar_encode(n, s)
    assert caesar_encode((26 - n) % 26, enc) == s
    assert caesar_encode(n + 26, s) == enc
    assert len(enc) == len(s)
    assert all(a == b for a, b in zip(s, enc) if not "a" <= a <= "z")
    assert all("a" <= b <= "z" for a, b in zip(s, enc) if "a" <= a <= "z")


@pytest.mark.parametrize("x,xs,expected", [(2, [3, 4, 5, 6], [3, 5]), (7, [], []), (3, [3, 6, 9], [])])
def test_remove_multiples(x, xs, expected):
    assert remove_multiples(x, xs) == expected


def test_sieve_examples():
    assert sieve(range(2, 11)) == [2, 3, 5, 7]
    assert sieve([]) == []
    assert sieve(range(2, 31)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_sieve_matches_trial_division():
    for n in range(0, 1001):
        assert sieve(list(range(2, n + 1))) == [k for k in range(n + 1) if is_prime_trial(k)]


@given(st.lists(st.integers(2, 300), max_size=40))
def test_sieve_general_path_matches_recursive_definition(xs):
    assert sieve(xs) == recursive_sieve(xs)


@pytest.mark.parametrize("n,expected", [(20, [(3, 5), (5, 7), (11, 13), (17, 19)]), (5, [(3, 5)]), (4, []), (2, [])])
def test_twin_examples(n, expected):
    assert twin_primes(n) == [TwinPair(*p) for p in expected]


def test_twin_primes_rejects_small_bounds():
    with pytest.raises(ValueError):
        twin_primes(1)


@given(st.integers(2, 3000))
def test_twin_pair_invariants(n):
    pairs = twin_primes(n)
    assert pairs == sorted(pairs)
    for p in pairs:
        assert p.second - p.first == 2 and p.second <= n
        assert is_prime_trial(p.first) and is_prime_trial(p.second)
        assert not is_prime_trial(p.first + 1)
    expected = [(k, k + 2) for k in range(2, n - 1) if is_prime_trial(k) and is_prime_trial(k + 2)]
    assert [tuple(p) for p in pairs] == expected


@pytest.mark.parametrize("k,expected", [(0, False), (1, False), (2, True), (91, False), (97, True)])
def test_is_prime_trial(k, expected):
    assert is_prime_trial(k) is expected
