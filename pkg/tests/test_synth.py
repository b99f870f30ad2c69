import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsync.analysis import ame_check, factor_spectators, fidelity
from qsync.automaton import apply_word, is_balanced
from qsync.errors import FormatError
from qsync.qsim import classify_behavior, init_joint, run, unpack_register
from qsync.synth import (
    SynthResult,
    TargetSpec,
    parse_targetspec,
    run_synthesis,
    suffix_levels,
    synthesize,
    targetspec_to_doc,
    verify_synthesis,
)
from qsync.unitarize import JointPerm, verify_realizes

AME_STRINGS = ("AAAAA", "AAABB", "ABBAA", "BBABA", "ABBBB", "BBAAB", "BABBA", "BABAB")
AME_SIGNS = (1, 1, 1, 1, -1, 1, 1, -1)


def ame_spec():
    scale = 1 / (2 * math.sqrt(2))
    return TargetSpec.make(
        {text: sign * scale for text, sign in zip(AME_STRINGS, AME_SIGNS)}, "BBBBB"
    )


def register_of(state):
    return {unpack_register(packed, state.k): amp for (packed, _), amp in state.amps.items()}


class TestSuffixLevels:
    def test_ame_levels(self):
        assert suffix_levels(AME_STRINGS) == (8, 8, 8, 4, 2, 1)
        assert sum(suffix_levels(AME_STRINGS)) == 31

    def test_ghz_levels(self):
        assert suffix_levels(["aaa", "bbb"]) == (2, 2, 2, 1)

    def test_w_levels(self):
        assert suffix_levels(["aab", "aba", "baa"]) == (3, 3, 2, 1)

    def test_single_string(self):
        assert suffix_levels(["abab"]) == (1, 1, 1, 1, 1)

    def test_duplicates_rejected(self):
        with pytest.raises(FormatError):
            suffix_levels(["aa", "aa"])

    def test_unequal_lengths_rejected(self):
        with pytest.raises(FormatError):
            suffix_levels(["aa", "aaa"])


class TestTargetSpec:
    def test_normalizes_coefficients_and_case(self):
        spec = TargetSpec.make({"AB": 3, "BA": 4})
        assert spec.strings == ("ab", "ba")
        assert abs(sum(abs(c) ** 2 for _, c in spec.terms) - 1) < 1e-12
        assert spec.input_word == "bb"  # default all-b

    def test_zero_coefficients_rejected(self):
        with pytest.raises(FormatError):
            TargetSpec.make({"ab": 0})

    def test_word_length_must_match(self):
        with pytest.raises(FormatError):
            TargetSpec.make({"ab": 1}, "abc")

    def test_file_roundtrip(self):
        from qsync.jsonio import dumps

        spec = ame_spec()
        again = parse_targetspec(dumps(targetspec_to_doc(spec)))
        assert again == spec


class TestSynthesize:
    def test_w_state(self):
        spec = TargetSpec.make({"aab": 1, "aba": 1, "baa": 1}, "aaa")
        result = synthesize(spec)
        assert result.perm.n == 9  # suffix counting: 3 + 3 + 2 + 1
        assert verify_synthesis(result, spec)
        final = run_synthesis(result, spec)
        w = 1 / math.sqrt(3)
        assert abs(fidelity(register_of(final), {"aab": w, "aba": w, "baa": w}) - 1) < 1e-12

    def test_ghz_state(self):
        alpha, beta = math.sqrt(0.3), 1j * math.sqrt(0.7)
        spec = TargetSpec.make({"aaa": alpha, "bbb": beta}, "aaa")
        result = synthesize(spec)
        assert result.perm.n == 7
        assert verify_synthesis(result, spec)
        final = run_synthesis(result, spec)
        assert abs(fidelity(register_of(final), {"aaa": alpha, "bbb": beta}) - 1) < 1e-12

    def test_ame_state(self):
        spec = ame_spec()
        result = synthesize(spec)
        assert result.perm.n == 31
        assert result.level_sizes == (8, 8, 8, 4, 2, 1)
        assert verify_synthesis(result, spec)
        verdict = ame_check(register_of(run_synthesis(result, spec)))
        assert verdict["is_ame"]

    def test_output_decoupled_on_final_state(self):
        spec = ame_spec()
        result = synthesize(spec)
        final = run_synthesis(result, spec)
        behavior = classify_behavior(final)
        assert behavior.schmidt_rank == 1
        assert abs(behavior.automaton_factor[result.final_state] - 1) < 1e-12

    def test_dfa_is_balanced_and_realized(self):
        result = synthesize(ame_spec())
        assert is_balanced(result.dfa)
        assert verify_realizes(result.perm, result.dfa)

    def test_word_synchronizes_branch_states(self):
        spec = ame_spec()
        result = synthesize(spec)
        finals = {
            apply_word(result.dfa, spec.input_word, q) for q in result.branch_states.values()
        }
        assert finals == {result.final_state}

    def test_coefficients_do_not_change_machine(self):
        strings = {"aab": 0.5, "abb": 0.5j, "bbb": -0.5, "baa": 0.5}
        first = synthesize(TargetSpec.make(strings, "aaa"))
        second = synthesize(TargetSpec.make({text: 0.5 for text in strings}, "aaa"))
        assert first.perm.pairs == second.perm.pairs
        assert first.dfa.delta == second.dfa.delta

    def test_state_count_equals_suffix_total(self):
        for strings in (["aaa", "bbb"], ["aab", "aba", "baa"], list(AME_STRINGS)):
            spec = TargetSpec.make({text: 1 for text in strings})
            assert synthesize(spec).perm.n == sum(suffix_levels(strings))

    def test_single_term_spec(self):
        spec = TargetSpec.make({"abab": 1}, "bbbb")
        result = synthesize(spec)
        assert verify_synthesis(result, spec)

    def test_corrupted_perm_fails_verification(self):
        spec = TargetSpec.make({"aaa": 1, "bbb": 1}, "aaa")
        result = synthesize(spec)
        pairs = list(result.perm.pairs)
        pairs[0], pairs[1] = pairs[1], pairs[0]
        broken = SynthResult(
            dfa=result.dfa,
            perm=JointPerm(result.perm.n, tuple(pairs)),
            branch_states=result.branch_states,
            final_state=result.final_state,
            level_sizes=result.level_sizes,
        )
        assert not verify_synthesis(broken, spec)

    def test_ghz_from_ame_superposition(self):
        # pairs of target strings agreeing on one qubit give GHZ on the rest
        spec = ame_spec()
        result = synthesize(spec)
        scale = 1 / math.sqrt(2)
        pair = [
            (result.branch_states["aaaaa"], scale),
            (result.branch_states["abbbb"], -scale),
        ]
        final = run(result.perm, init_joint("bbbbb", pair, n=result.perm.n))[-1]
        split = factor_spectators(register_of(final))
        assert split["spectators"] == [(1, "a")]
        assert abs(fidelity(split["core"], {"aaaa": scale, "bbbb": -scale}) - 1) < 1e-12


@st.composite
def random_specs(draw):
    k = draw(st.integers(min_value=1, max_value=6))
    count = draw(st.integers(min_value=1, max_value=min(8, 2**k)))
    pool = st.lists(st.integers(min_value=0, max_value=1), min_size=k, max_size=k)
    strings = set()
    while len(strings) < count:
        strings.add("".join("ab"[b] for b in draw(pool)))
    coeffs = {}
    for text in sorted(strings):
        re = draw(st.floats(min_value=-1, max_value=1))
        im = draw(st.floats(min_value=-1, max_value=1))
        coeffs[text] = complex(re, im) if abs(complex(re, im)) > 1e-6 else 1.0
    word = "".join("ab"[b] for b in draw(pool))
    return TargetSpec.make(coeffs, word)


@given(random_specs())
@settings(max_examples=200, deadline=None)
def test_random_specs_verify(spec):
    result = synthesize(spec)
    assert verify_synthesis(result, spec)
    assert result.perm.n == sum(suffix_levels(spec.strings))
