"""The HTTP session service, driven in-process through the test client."""

import json

import pytest
from fastapi.testclient import TestClient

from demon_solitaire.formats import transcript_from_json
from demon_solitaire.service import create_app


DEMO = {"k": 3, "m": 4, "stacks": [[2], [2], [2, 3, 4]]}
RAMP = {"k": 3, "m": 4, "stacks": [[2], [2, 3], [2, 3]]}


@pytest.fixture
def client():
    return TestClient(create_app())


def create(client, **body):
    r = client.post("/sessions", json=body)
    assert r.status_code == 201, r.text
    return r.json()


class TestHealth:
    def test_healthz(self, client):
        r = client.get("/healthz")
        assert r.status_code == 200
        assert r.json() == {"status": "ok"}


class TestPlayerFlow:
    def test_create_shows_the_position(self, client):
        view = create(client, demon="konig", **DEMO)
        assert view["status"] == "awaiting_player"
        assert view["config"] == {"k": 3, "m": 4}
        assert view["stacks"] == [[2], [2], [2, 3, 4]]
        assert view["reserve"] == [3, 0, 2, 2]
        assert view["human_role"] == "player"
        assert view["demon"] == "konig"
        assert len(view["legal_moves"]) == 9
        assert view["legal_responses"] == []
        assert view["pending_move"] is None
        assert view["winning_hand"] is None

    def test_hint_then_winning_move(self, client):
        view = create(client, demon="konig", **DEMO)
        sid = view["id"]

        hint = client.get(f"/sessions/{sid}/hint")
        assert hint.status_code == 200
        assert hint.json() == {
            "already_winning": False,
            "move": {"i": 2, "a": 2, "b": 1},
        }

        r = client.post(f"/sessions/{sid}/move", json={"i": 1, "a": 2, "b": 1})
        assert r.status_code == 200
        after = r.json()
        # the tight demon has no legal counter to this move, so it passed
        assert after["status"] == "won"
        assert after["stacks"] == [[1], [2], [2, 3, 4]]
        assert after["moves_played"] == 1
        assert after["transcript"]["rounds"] == [
            {"player": {"i": 1, "a": 2, "b": 1}, "demon": "pass"}
        ]
        assert after["transcript"]["outcome"] == "won"
        assert after["winning_hand"] == [
            {"stack": 1, "card": 1},
            {"stack": 2, "card": 2},
            {"stack": 3, "card": 3},
        ]
        assert after["legal_moves"] == []

    def test_move_after_win_is_wrong_turn(self, client):
        view = create(client, demon="konig", **DEMO)
        sid = view["id"]
        client.post(f"/sessions/{sid}/move", json={"i": 1, "a": 2, "b": 1})
        r = client.post(f"/sessions/{sid}/move", json={"i": 1, "a": 1, "b": 2})
        assert r.status_code == 409
        assert r.json()["code"] == "wrong_turn"

    def test_illegal_move_rejected(self, client):
        view = create(client, **DEMO)
        r = client.post(f"/sessions/{view['id']}/move", json={"i": 1, "a": 3, "b": 1})
        assert r.status_code == 422
        assert r.json()["code"] == "illegal_move"
        # the position is untouched
        again = client.get(f"/sessions/{view['id']}").json()
        assert again["stacks"] == DEMO["stacks"]

    def test_machine_demon_answers_within_its_rule(self, client):
        view = create(client, demon="contrary", **DEMO)
        sid = view["id"]
        r = client.post(f"/sessions/{sid}/move", json={"i": 1, "a": 2, "b": 1})
        after = r.json()
        # the undoing demon always restores the previous position
        assert after["stacks"] == DEMO["stacks"]
        assert after["transcript"]["rounds"][0]["demon"] == {"j": 1, "out": 1, "in": 2}
        assert after["status"] == "awaiting_player"

    def test_seeded_session(self, client):
        view = create(client, seed=12, demon="vizing")
        assert view["strategy"] == "vizing"
        assert view["config"]["k"] >= 2
        assert len(view["stacks"]) == view["config"]["k"]

    def test_already_winning_deal(self, client):
        view = create(client, k=2, m=3, stacks=[[1], [2]])
        assert view["status"] == "won"
        assert view["winning_hand"] == [
            {"stack": 1, "card": 1},
            {"stack": 2, "card": 2},
        ]

    def test_hint_when_winning(self, client):
        view = create(client, k=2, m=3, stacks=[[1], [2]])
        hint = client.get(f"/sessions/{view['id']}/hint").json()
        assert hint == {"already_winning": True, "move": None}

    def test_response_endpoint_is_demons_only(self, client):
        view = create(client, **DEMO)
        r = client.post(f"/sessions/{view['id']}/response", json="pass")
        assert r.status_code == 409
        assert r.json()["code"] == "wrong_turn"


class TestDemonFlow:
    def test_machine_opens_and_human_answers(self, client):
        view = create(client, human_role="demon", demon="vizing", **RAMP)
        sid = view["id"]
        assert view["status"] == "awaiting_demon"
        assert view["pending_move"] == {"i": 1, "a": 2, "b": 1}
        assert view["legal_responses"] == [
            "pass",
            {"j": 2, "out": 2, "in": 1},
            {"j": 3, "out": 2, "in": 1},
        ]
        assert view["legal_moves"] == []

        bad = client.post(f"/sessions/{sid}/response", json={"j": 2, "out": 3, "in": 1})
        assert bad.status_code == 422
        assert bad.json()["code"] == "illegal_response"

        r = client.post(f"/sessions/{sid}/response", json="pass")
        assert r.status_code == 200
        after = r.json()
        assert after["status"] == "won"
        assert after["stacks"] == [[1], [2, 3], [2, 3]]
        assert after["winning_hand"] == [
            {"stack": 1, "card": 1},
            {"stack": 2, "card": 3},
            {"stack": 3, "card": 2},
        ]

    def test_adversarial_response_only_delays(self, client):
        view = create(client, human_role="demon", demon="vizing", **RAMP)
        sid = view["id"]
        for _ in range(view["config"]["k"] ** 2 + view["config"]["k"]):
            view = client.get(f"/sessions/{sid}").json()
            if view["status"] != "awaiting_demon":
                break
            swaps = [r for r in view["legal_responses"] if r != "pass"]
            choice = swaps[0] if swaps else "pass"
            r = client.post(f"/sessions/{sid}/response", json=choice)
            assert r.status_code == 200, r.text
            view = r.json()
        assert view["status"] == "won"

    def test_pass_object_form_accepted(self, client):
        view = create(client, human_role="demon", demon="vizing", **RAMP)
        r = client.post(f"/sessions/{view['id']}/response", json={"pass": True})
        assert r.status_code == 200

    def test_move_endpoint_is_players_only(self, client):
        view = create(client, human_role="demon", demon="vizing", **RAMP)
        r = client.post(f"/sessions/{view['id']}/move", json={"i": 1, "a": 2, "b": 1})
        assert r.status_code == 409

    def test_hint_is_players_only(self, client):
        view = create(client, human_role="demon", demon="vizing", **RAMP)
        r = client.get(f"/sessions/{view['id']}/hint")
        assert r.status_code == 409

    def test_budget_zero_loses_at_once(self, client):
        view = create(client, human_role="demon", demon="konig", budget=0, **DEMO)
        assert view["status"] == "lost"
        assert view["transcript"]["outcome"] == "budget_exhausted"


class TestObserverFlow:
    def test_whole_game_runs_at_creation(self, client):
        view = create(client, human_role="observer", demon="vizing", **RAMP)
        assert view["status"] == "won"
        assert view["moves_played"] >= 1
        assert view["legal_moves"] == [] and view["legal_responses"] == []
        t = transcript_from_json(view["transcript"])
        assert [sorted(s) for s in t.final_state.stacks] == view["stacks"]


class TestErrors:
    def test_unknown_session(self, client):
        r = client.get("/sessions/nope")
        assert r.status_code == 404
        assert r.json()["code"] == "unknown_session"

    def test_malformed_json_body(self, client):
        r = client.post(
            "/sessions", content=b"{not json", headers={"content-type": "application/json"}
        )
        assert r.status_code == 400
        assert r.json()["code"] == "parse_error"

    def test_missing_deal_parameters(self, client):
        r = client.post("/sessions", json={"demon": "konig"})
        assert r.status_code == 400

    def test_unknown_demon(self, client):
        r = client.post("/sessions", json={"demon": "polite", "seed": 1})
        assert r.status_code == 400

    def test_bad_game_number(self, client):
        r = client.post("/sessions", json={"k": 0, "m": 3, "stacks": []})
        assert r.status_code == 422
        assert r.json()["code"] == "bad_game_number"

    def test_two_singletons_with_loose_strategy(self, client):
        r = client.post(
            "/sessions",
            json={"k": 2, "m": 2, "stacks": [[1], [1]], "strategy": "vizing"},
        )
        assert r.status_code == 422
        assert r.json()["code"] == "profile_unsupported"

    def test_malformed_move_body(self, client):
        view = create(client, **DEMO)
        r = client.post(f"/sessions/{view['id']}/move", json={"i": 1})
        assert r.status_code == 400
        assert r.json()["code"] == "parse_error"

    def test_busy_session(self, client):
        view = create(client, **DEMO)
        sid = view["id"]
        sess = client.app.state.sessions[sid]
        assert sess.lock.acquire(blocking=False)
        try:
            r = client.post(f"/sessions/{sid}/move", json={"i": 1, "a": 2, "b": 1})
            assert r.status_code == 429
            assert r.json()["code"] == "busy"
        finally:
            sess.lock.release()
        # once released the same request goes through
        r = client.post(f"/sessions/{sid}/move", json={"i": 1, "a": 2, "b": 1})
        assert r.status_code == 200


class TestIsolationAndLogging:
    def test_sessions_do_not_bleed(self, client):
        a = create(client, **DEMO)
        b = create(client, **DEMO)
        client.post(f"/sessions/{a['id']}/move", json={"i": 1, "a": 2, "b": 1})
        before = client.get(f"/sessions/{b['id']}").json()
        assert before["stacks"] == DEMO["stacks"]
        assert before["moves_played"] == 0

    def test_finished_games_are_logged(self, tmp_path):
        log = tmp_path / "games.jsonl"
        client = TestClient(create_app(transcript_log=str(log)))
        view = create(client, human_role="observer", demon="konig", **DEMO)
        records = [json.loads(line) for line in log.read_text().splitlines()]
        assert len(records) == 1
        assert records[0]["session"] == view["id"]
        assert records[0]["view"]["status"] == "won"

    def test_player_win_is_logged_too(self, tmp_path):
        log = tmp_path / "games.jsonl"
        client = TestClient(create_app(transcript_log=str(log)))
        view = create(client, **DEMO)
        client.post(f"/sessions/{view['id']}/move", json={"i": 1, "a": 2, "b": 1})
        records = [json.loads(line) for line in log.read_text().splitlines()]
        assert [r["view"]["transcript"]["outcome"] for r in records] == ["won"]


class TestTranscriptConsistency:
    def test_view_transcript_replays_to_the_shown_stacks(self, client):
        view = create(client, seed=4, demon="konig")
        sid = view["id"]
        guard = view["config"]["k"] ** 2 + view["config"]["k"] + 1
        for _ in range(guard):
            view = client.get(f"/sessions/{sid}").json()
            if view["status"] != "awaiting_player":
                break
            hint = client.get(f"/sessions/{sid}/hint").json()
            r = client.post(f"/sessions/{sid}/move", json=hint["move"])
            assert r.status_code == 200
            view = r.json()
        assert view["status"] == "won"
        t = transcript_from_json(view["transcript"])
        assert [sorted(s) for s in t.final_state.stacks] == view["stacks"]
        assert len(t.rounds) == view["moves_played"]
