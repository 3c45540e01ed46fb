import itertools

import pytest

from symdyn import (
    Alphabet,
    Coded,
    FullShift,
    InputError,
    Sofic,
    gamma,
    is_admissible,
    language,
    omega,
    omega_circ,
    omega_contains,
)
from symdyn.catalog import BINARY, coded_pairs, even_sft, even_shift, full_shift, golden_mean
from symdyn.context import BACKWARD, FORWARD
from symdyn.covers import exact_omega
from symdyn.verdict import Outcome


def words(spec, ws):
    return tuple(spec.alphabet.format(w) for w in ws)


def brute_language(spec, n, forbidden_check):
    return {w for w in itertools.product(spec.alphabet.symbols, repeat=n) if forbidden_check(w)}


def has_odd_gap(w):
    s = "".join(w)
    return any(
        s[i] == "1" and s[j] == "1" and (j - i - 1) % 2 == 1 and "1" not in s[i + 1:j]
        for i in range(len(s)) for j in range(i + 1, len(s))
    )


# alphabet and words

def test_alphabet_parses_single_and_multi_char():
    assert BINARY.parse("0110") == ("0", "1", "1", "0")
    assert BINARY.parse("") == ()
    multi = Alphabet(("00", "01", "10"))
    assert multi.parse("00.01") == ("00", "01")
    assert multi.format(("00", "01")) == "00.01"


def test_alphabet_rejects_unknown_symbol():
    with pytest.raises(InputError):
        BINARY.parse("012")


def test_alphabet_rejects_separator_in_symbol():
    with pytest.raises(InputError):
        Alphabet(("a.b", "c"))


# admissibility

def test_forbidden_word_is_inadmissible():
    assert is_admissible(golden_mean(), "11").no


def test_even_sft_rejects_101():
    v = is_admissible(even_sft(9), "101")
    assert v.no


def test_full_shift_admits_everything():
    assert is_admissible(full_shift(), "0110").yes


def test_coded_factor_of_concatenation():
    spec = Coded(Alphabet(("g", "0")), (("g", "0", "0"), ("g", "0", "0", "0", "0")), 12)
    assert is_admissible(spec, "00g00").yes


def test_coded_impossible_word_is_no():
    spec = Coded(Alphabet(("g", "0")), (("g", "0", "0"),), 12)
    assert is_admissible(spec, "gg").no


def test_coded_long_word_unknown_past_truncation():
    spec = Coded(Alphabet(("g", "0")), (("g", "0", "0"),), 6)
    assert is_admissible(spec, "g00g00g00g00").outcome is Outcome.UNKNOWN


def test_coded_truncation_must_cover_two_codewords():
    with pytest.raises(InputError):
        Coded(Alphabet(("g", "0")), (("g", "0", "0", "0"),), 5)


def test_sofic_accepts_nondeterministic_graph():
    from symdyn import LabelledGraph

    g = LabelledGraph(BINARY, ("A", "B"), {("A", "0", "A"), ("A", "0", "B"), ("B", "1", "A")})
    spec = Sofic(g)
    assert is_admissible(spec, "0101").yes
    assert is_admissible(spec, "11").no


# language

def test_language_golden_mean():
    spec = golden_mean()
    assert words(spec, language(spec, 2).words) == ("00", "01", "10")
    assert words(spec, language(spec, 1).words) == ("0", "1")


def test_language_full_shift_two_letters():
    spec = FullShift(Alphabet(("a", "b")))
    assert len(language(spec, 3).words) == 8


def test_golden_mean_counts_follow_fibonacci():
    spec = golden_mean()
    counts = [len(language(spec, n).words) for n in range(1, 13)]
    for n in range(2, 12):
        assert counts[n] == counts[n - 1] + counts[n - 2]
    assert counts[:3] == [2, 3, 5]


def test_even_shift_matches_brute_force_oracle():
    spec = even_shift()
    for n in range(1, 11):
        oracle = brute_language(spec, n, lambda w: not has_odd_gap(w))
        assert set(language(spec, n).words) == oracle


def test_sofic_and_truncated_sft_agree_up_to_truncation():
    sofic, sft = even_shift(), even_sft(9)
    for n in range(1, 10):
        assert language(sofic, n).words == language(sft, n).words


def test_language_is_factor_closed():
    spec = even_shift()
    longer = set(language(spec, 7).words)
    shorter = set(language(spec, 6).words)
    assert {w[1:] for w in longer} == shorter
    assert {w[:-1] for w in longer} == shorter


def test_coded_language_reports_unknowns():
    spec = Coded(Alphabet(("g", "0")), (("g", "0", "0"),), 6)
    ctx = language(spec, 8)
    assert ctx.unknown
    assert ctx.approximate


# gamma, omega, omega_circ

def test_gamma_even_shift_after_1():
    spec = even_shift()
    assert words(spec, gamma(spec, "1", FORWARD, 2).words) == ("00", "10", "11")


def test_gamma_golden_mean_after_1():
    spec = golden_mean()
    assert words(spec, gamma(spec, "1", FORWARD, 1).words) == ("0",)


def test_gamma_backward_is_left_extension():
    spec = golden_mean()
    assert words(spec, gamma(spec, "1", BACKWARD, 1).words) == ("0",)


def test_gamma_full_shift_is_everything():
    spec = full_shift()
    assert len(gamma(spec, "01", FORWARD, 3).words) == 8


def test_gamma_rejects_inadmissible_word():
    with pytest.raises(InputError):
        gamma(golden_mean(), "11", FORWARD, 1)


def test_omega_even_shift_after_0():
    spec = even_shift()
    assert words(spec, omega(spec, "0", FORWARD, 1, 2).words) == ("0",)


def test_omega_after_sync_word_equals_gamma():
    spec = even_shift()
    assert words(spec, omega(spec, "1", FORWARD, 2, 4).words) == ("00", "10", "11")


def test_omega_full_shift():
    spec = full_shift()
    assert len(omega(spec, "0", FORWARD, 3, 2).words) == 8


def test_omega_marked_exact_when_it_matches_cover():
    spec = even_shift()
    ctx = omega(spec, "0", FORWARD, 1, 6)
    assert ctx.exact
    assert ctx.words == exact_omega(spec, "0", FORWARD, 1)


def test_omega_circ_examples():
    assert words(even_shift(), omega_circ(even_shift(), "1", 1, 4, 4).words) == ("0", "1")
    assert words(golden_mean(), omega_circ(golden_mean(), "1", 1, 2, 4).words) == ("0",)
    assert len(omega_circ(full_shift(), "0", 2, 2, 2).words) == 4


@pytest.mark.parametrize("spec", [even_shift(), golden_mean(), even_sft(9)])
def test_omega_inside_gamma(spec):
    for a in language(spec, 2).words:
        for direction in (FORWARD, BACKWARD):
            for n in (1, 2, 3):
                g = set(gamma(spec, a, direction, n).words)
                assert set(omega(spec, a, direction, n, 3).words) <= g


@pytest.mark.parametrize("spec", [even_shift(), golden_mean()])
def test_omega_shrinks_with_longer_history(spec):
    for a in language(spec, 2).words:
        prev = None
        for m in range(0, 6):
            cur = set(omega(spec, a, FORWARD, 3, m).words)
            if prev is not None:
                assert cur <= prev
            prev = cur


def test_reversed_spec_language_is_reversed():
    spec = golden_mean()
    rev = spec.reversed()
    assert {w[::-1] for w in language(spec, 5).words} == set(language(rev, 5).words)


def test_coded_pairs_catalog_entry():
    spec = coded_pairs()
    assert spec.truncation >= 2 * spec.longest
    assert is_admissible(spec, "g00g0000").yes


@pytest.mark.parametrize("spec", [even_shift(), golden_mean(), coded_pairs()])
def test_omega_contains_agrees_with_omega(spec):
    for a in language(spec, 2).words:
        for direction in (FORWARD, BACKWARD):
            for n in (1, 2, 3):
                listed = set(omega(spec, a, direction, n, 2).words)
                for w in language(spec, n).words:
                    assert (omega_contains(spec, a, w, direction, 2) is Outcome.YES) == (w in listed)
