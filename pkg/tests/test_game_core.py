"""Core game rules: deals, moves, demon responses, hands, the round loop."""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demon_solitaire import (
    PASS,
    BadCardNumber,
    BadGameNumber,
    CardOutOfRange,
    DemonKind,
    DemonSwap,
    EmptyStack,
    GameConfig,
    GameState,
    IllegalMove,
    IllegalResponse,
    NonconformingDemon,
    Outcome,
    PlayerMove,
    Transcript,
    WrongStackCount,
    apply_demon_response,
    apply_player_move,
    demon_legal_responses,
    is_winning,
    legal_player_moves,
    max_hand,
    new_game,
    replay,
    reserve_count,
    run_game,
)
from demon_solitaire.checks import demo_deal, random_deal
from demon_solitaire.demons import FirstLegalDemon, RandomDemon, ScriptedDemon
from demon_solitaire.strategies import KonigStrategy

import random


def small_deals(k_max=3, m_max=4):
    return st.integers(1, k_max).flatmap(
        lambda k: st.integers(k, m_max).flatmap(
            lambda m: st.lists(
                st.sets(st.integers(1, m), min_size=1), min_size=k, max_size=k
            ).map(lambda stacks: new_game(GameConfig(k=k, m=m), stacks))
        )
    )


class TestDealValidation:
    def test_bad_game_number(self):
        with pytest.raises(BadGameNumber):
            GameConfig(k=0, m=3)

    def test_card_number_below_game_number(self):
        with pytest.raises(BadCardNumber):
            GameConfig(k=3, m=2)

    def test_wrong_stack_count(self):
        with pytest.raises(WrongStackCount):
            new_game(GameConfig(k=2, m=3), [[1]])

    def test_empty_stack(self):
        with pytest.raises(EmptyStack):
            new_game(GameConfig(k=2, m=3), [[1], []])

    def test_card_out_of_range(self):
        with pytest.raises(CardOutOfRange):
            new_game(GameConfig(k=2, m=3), [[1], [4]])
        with pytest.raises(CardOutOfRange):
            new_game(GameConfig(k=2, m=3), [[0], [1]])

    def test_duplicates_collapse(self):
        state = new_game(GameConfig(k=1, m=2), [[1, 1, 2]])
        assert state.stack(1) == frozenset({1, 2})


class TestReserve:
    def test_demo_deal_counts(self):
        state = demo_deal()
        assert state.reserve_counts() == {1: 3, 2: 0, 3: 2, 4: 2}

    def test_out_of_range(self):
        with pytest.raises(CardOutOfRange):
            reserve_count(demo_deal(), 5)

    @given(small_deals())
    @settings(max_examples=60, deadline=None)
    def test_conservation(self, state):
        for c in range(1, state.m + 1):
            on_stacks = sum(1 for i in range(1, state.k + 1) if c in state.stack(i))
            assert reserve_count(state, c) + on_stacks == state.k


class TestLegalMoves:
    def test_demo_deal_enumeration(self):
        moves = legal_player_moves(demo_deal())
        assert moves == [
            PlayerMove(1, 2, 1), PlayerMove(1, 2, 3), PlayerMove(1, 2, 4),
            PlayerMove(2, 2, 1), PlayerMove(2, 2, 3), PlayerMove(2, 2, 4),
            PlayerMove(3, 2, 1), PlayerMove(3, 3, 1), PlayerMove(3, 4, 1),
        ]

    @given(small_deals())
    @settings(max_examples=60, deadline=None)
    def test_count_formula(self, state):
        # each stack of size n contributes n * (m - n) swaps
        expect = sum(n * (state.m - n) for n in state.profile())
        assert len(legal_player_moves(state)) == expect

    @given(small_deals())
    @settings(max_examples=60, deadline=None)
    def test_every_listed_move_applies(self, state):
        for mv in legal_player_moves(state):
            after = apply_player_move(state, mv)
            assert after.profile() == state.profile()
            assert mv.in_card in after.stack(mv.stack)
            assert mv.out_card not in after.stack(mv.stack)


class TestIllegalMoves:
    def test_out_card_absent(self):
        with pytest.raises(IllegalMove, match="not on stack"):
            apply_player_move(demo_deal(), PlayerMove(1, 3, 1))

    def test_in_card_present(self):
        with pytest.raises(IllegalMove, match="already on stack"):
            apply_player_move(demo_deal(), PlayerMove(3, 2, 4))

    def test_same_card(self):
        with pytest.raises(IllegalMove, match="both"):
            apply_player_move(demo_deal(), PlayerMove(1, 2, 2))

    def test_bad_stack_index(self):
        with pytest.raises(IllegalMove, match="stack index"):
            apply_player_move(demo_deal(), PlayerMove(4, 2, 1))

    def test_bad_card_range(self):
        with pytest.raises(IllegalMove, match="out card"):
            apply_player_move(demo_deal(), PlayerMove(1, 5, 1))


class TestDemonResponses:
    """Responses to (1, 2 out, 1 in) on the demo deal, for every rule."""

    def after_move(self):
        state = demo_deal()
        mv = PlayerMove(1, 2, 1)
        return apply_player_move(state, mv), mv

    def test_lazy(self):
        after, mv = self.after_move()
        assert demon_legal_responses(after, mv, DemonKind.LAZY) == [PASS]

    def test_contrary_undoes(self):
        after, mv = self.after_move()
        responses = demon_legal_responses(after, mv, DemonKind.CONTRARY)
        assert responses == [DemonSwap(stack=1, out_card=1, in_card=2)]
        assert apply_demon_response(after, responses[0]) == demo_deal()

    def test_konig_has_no_counter(self):
        after, mv = self.after_move()
        assert demon_legal_responses(after, mv, DemonKind.KONIG) == [PASS]

    def test_vizing_can_copy_the_swap(self):
        after, mv = self.after_move()
        assert demon_legal_responses(after, mv, DemonKind.VIZING) == [
            PASS,
            DemonSwap(stack=2, out_card=2, in_card=1),
            DemonSwap(stack=3, out_card=2, in_card=1),
        ]

    def test_konig_counter_when_in_card_is_elsewhere(self):
        # after (3, 2 out, 1 in) on [{1},{2,3},{2,3}], stack 1 holds a 1 and
        # no 2, so the tight demon may trade them back
        state = new_game(GameConfig(3, 4), [[1], [2, 3], [2, 3]])
        mv = PlayerMove(3, 2, 1)
        after = apply_player_move(state, mv)
        konig = demon_legal_responses(after, mv, DemonKind.KONIG)
        assert konig == [PASS, DemonSwap(stack=1, out_card=1, in_card=2)]
        assert all(r is PASS or r.stack != 3 for r in konig)

    def test_illegal_response_rejected(self):
        after, mv = self.after_move()
        with pytest.raises(IllegalResponse):
            apply_demon_response(after, DemonSwap(stack=2, out_card=3, in_card=1))

    @given(small_deals())
    @settings(max_examples=40, deadline=None)
    def test_rule_containment(self, state):
        # lazy ⊆ konig ⊆ vizing on every legal move
        for mv in legal_player_moves(state):
            after = apply_player_move(state, mv)
            lazy = demon_legal_responses(after, mv, DemonKind.LAZY)
            konig = demon_legal_responses(after, mv, DemonKind.KONIG)
            vizing = demon_legal_responses(after, mv, DemonKind.VIZING)
            assert set(lazy) <= set(konig) <= set(vizing)
            for resp in vizing:
                if not isinstance(resp, type(PASS)):
                    assert resp.stack != mv.stack
                    applied = apply_demon_response(after, resp)
                    assert applied.profile() == after.profile()


def brute_force_best_hand(state: GameState) -> int:
    best = 0
    options = [sorted(state.stack(i)) + [0] for i in range(1, state.k + 1)]
    for picks in product(*options):
        chosen = [p for p in picks if p]
        if len(set(chosen)) == len(chosen):
            best = max(best, len(chosen))
    return best


class TestHands:
    def test_demo_deal_hand(self):
        assert max_hand(demo_deal()) == {1: 2, 3: 3}
        assert not is_winning(demo_deal())

    def test_winning_hand(self):
        state = new_game(GameConfig(3, 4), [[2], [2, 3], [2, 3, 4]])
        assert is_winning(state)
        hand = max_hand(state)
        assert len(hand) == 3
        assert len(set(hand.values())) == 3
        for i, c in hand.items():
            assert c in state.stack(i)

    @given(small_deals())
    @settings(max_examples=80, deadline=None)
    def test_matches_brute_force(self, state):
        assert len(max_hand(state)) == brute_force_best_hand(state)

    def test_deterministic(self):
        state = demo_deal()
        assert max_hand(state) == max_hand(state)


class TestRunGame:
    def test_budget_exhaustion_against_contrary(self):
        state = demo_deal()
        t = run_game(state, KonigStrategy(), RandomDemon(DemonKind.CONTRARY), move_budget=5)
        assert t.outcome is Outcome.BUDGET_EXHAUSTED
        assert t.player_moves == 5
        assert t.final_state == state
        assert t.winning_hand is None

    def test_immediate_win_plays_no_move(self):
        state = new_game(GameConfig(2, 3), [[1], [2]])
        t = run_game(state, KonigStrategy(), FirstLegalDemon(DemonKind.KONIG))
        assert t.outcome is Outcome.WON
        assert t.player_moves == 0
        assert t.winning_hand == {1: 1, 2: 2}

    def test_stuck_when_policy_gives_up(self):
        class Resigner:
            def propose(self, state):
                return None

        t = run_game(demo_deal(), Resigner(), FirstLegalDemon(DemonKind.KONIG))
        assert t.outcome is Outcome.STUCK

    def test_nonconforming_demon_is_rejected(self):
        class Cheater:
            kind = DemonKind.KONIG

            def respond(self, state_after, mv):
                # copy the player's swap: vizing-only shape
                return DemonSwap(stack=2, out_card=mv.out_card, in_card=mv.in_card)

        with pytest.raises(NonconformingDemon):
            run_game(demo_deal(), KonigStrategy(), Cheater())

    def test_observer_sees_every_round(self):
        seen = []

        def watch(round_idx, before, mv, after_move, resp, after_resp):
            seen.append(round_idx)

        t = run_game(
            demo_deal(), KonigStrategy(), FirstLegalDemon(DemonKind.KONIG),
            observer=watch,
        )
        assert t.outcome is Outcome.WON
        assert seen == list(range(1, t.player_moves + 1))

    def test_replay_reproduces_final_state(self):
        rng = random.Random(11)
        for seed in range(20):
            state = random_deal(rng, rng.randint(1, 4), rng.randint(4, 6))
            t = run_game(state, KonigStrategy(), RandomDemon(DemonKind.KONIG, seed=seed))
            assert t.outcome is Outcome.WON
            assert replay(t) == t.final_state

    def test_scripted_demon_replays(self):
        state = demo_deal()
        t1 = run_game(state, KonigStrategy(), RandomDemon(DemonKind.VIZING, seed=5))
        script = ScriptedDemon(DemonKind.VIZING, [resp for _, resp in t1.rounds])
        t2 = run_game(state, KonigStrategy(), script)
        assert t2.rounds == t1.rounds
