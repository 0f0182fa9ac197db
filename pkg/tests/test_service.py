import pytest
from fastapi.testclient import TestClient

from thue_arena.engines import GameRun
from thue_arena.logs import encode_erase_log, encode_search_log, validate_log
from thue_arena.service import GameSession, SessionError, app, replay_human_run

client = TestClient(app)


def create(game="erase", symbols=8, seed=1):
    response = client.post(
        "/sessions", json={"game": game, "symbols": symbols, "seed": seed}
    )
    assert response.status_code == 201, response.text
    return response.json()


class TestSessionCore:
    def test_engine_opens(self):
        session = GameSession("erase", 8, seed=1)
        assert session.status == "awaiting_human"
        assert len(session.state.w) == 1
        assert [e["type"] for e in session.events] == ["appended", "state"]

    def test_mimic_move_erases_one(self):
        session = GameSession("erase", 8, seed=1)
        first = session.state.w[0]
        events = session.submit_human(first)
        kinds = [e["type"] for e in events]
        assert "erased" in kinds
        erased = next(e for e in events if e["type"] == "erased")
        assert erased["size"] == 1

    def test_erase_session_word_length_tracks_turns(self):
        session = GameSession("erase", 8, seed=5)
        for k in range(10):
            symbol = (session.state.w[-1] + 1 + k) % 8
            session.submit_human(symbol)
            assert session.status == "awaiting_human"
            assert len(session.moves) == 2 * (k + 1) + 1

    def test_nonrep_turn_parity(self):
        session = GameSession("nonrep", 6, seed=2)
        for k in range(15):
            session.submit_human((k * 2 + 1) % 6)
            # Control returns to the human exactly when the length is odd.
            assert len(session.state.w) % 2 == 1
            assert session.status == "awaiting_human"

    def test_out_of_range_symbol(self):
        session = GameSession("erase", 8, seed=1)
        with pytest.raises(SessionError) as info:
            session.submit_human(8)
        assert info.value.code == "symbol_out_of_range"

    def test_finished_session_rejects_moves(self):
        session = GameSession("erase", 8, seed=1)
        session.finish()
        with pytest.raises(SessionError) as info:
            session.submit_human(0)
        assert info.value.code == "session_finished"

    def test_interactive_invariants_hold(self):
        session = GameSession("nonrep", 6, seed=9)
        for k in range(60):
            session.submit_human((session.state.w[-1] + 1) % 6)
        for move in session.moves:
            assert move.repetition_size not in (1, 2, 3, 4)


class TestReplayEquivalence:
    def test_replay_reproduces_session(self):
        session = GameSession("erase", 8, seed=42)
        human = []
        for k in range(25):
            symbol = (session.state.w[-1] + 1 + k) % 8
            human.append(symbol)
            session.submit_human(symbol)
        run = session.export_run()
        replay_run, replay_events = replay_human_run("erase", 8, 42, human)
        assert replay_run.to_json() == run.to_json()
        assert replay_events == session.events

    def test_exported_search_run_encodes_cleanly(self):
        session = GameSession("nonrep", 6, seed=7)
        for k in range(30):
            session.submit_human((session.state.w[-1] + 1) % 6)
        run = session.export_run()
        log = encode_search_log(run)
        assert validate_log(log) == []

    def test_exported_erase_run_encodes_cleanly(self):
        session = GameSession("erase", 8, seed=7)
        for k in range(30):
            session.submit_human(session.state.w[-1])  # mimic the engine
        log = encode_erase_log(session.export_run())
        assert validate_log(log) == []


class TestHttpApi:
    def test_create_and_snapshot(self):
        created = create()
        assert created["status"] == "awaiting_human"
        assert created["lengths"]["word"] == 1
        assert created["events"][0]["type"] == "appended"
        snap = client.get(f"/sessions/{created['id']}").json()
        assert snap["word"] == created["word"]
        again = client.get(f"/sessions/{created['id']}").json()
        assert snap == again

    def test_invalid_config_rejected(self):
        response = client.post("/sessions", json={"game": "erase", "symbols": 3})
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "invalid_config"

    def test_default_symbol_counts(self):
        assert create(game="erase", symbols=None)["symbols"] == 8
        assert create(game="nonrep", symbols=None)["symbols"] == 6

    def test_move_cycle(self):
        created = create(seed=11)
        sid = created["id"]
        human_symbol = (created["word"][0] + 1) % 8
        response = client.post(f"/sessions/{sid}/moves", json={"symbol": human_symbol})
        assert response.status_code == 200
        body = response.json()
        assert body["state"]["status"] == "awaiting_human"
        kinds = [e["type"] for e in body["events"]]
        assert kinds[0] == "appended" and kinds[-1] == "state"
        # Events carry consecutive sequence numbers for replay safety.
        seqs = [e["seq"] for e in body["events"]]
        assert seqs == list(range(seqs[0], seqs[0] + len(seqs)))

    def test_error_codes(self):
        assert client.get("/sessions/missing").status_code == 404
        created = create(seed=3)
        sid = created["id"]
        bad = client.post(f"/sessions/{sid}/moves", json={"symbol": 99})
        assert bad.status_code == 422
        assert bad.json()["detail"]["code"] == "symbol_out_of_range"
        client.delete(f"/sessions/{sid}")
        finished = client.post(f"/sessions/{sid}/moves", json={"symbol": 0})
        assert finished.status_code == 409
        assert finished.json()["detail"]["code"] == "session_finished"

    def test_export_round(self):
        created = create(game="nonrep", symbols=6, seed=8)
        sid = created["id"]
        human = []
        for k in range(12):
            state = client.get(f"/sessions/{sid}").json()
            symbol = (state["word"][-1] + 1) % 6
            human.append(symbol)
            assert client.post(f"/sessions/{sid}/moves", json={"symbol": symbol}).status_code == 200
        exported = client.delete(f"/sessions/{sid}").json()["run"]
        replay_run, _ = replay_human_run("nonrep", 6, 8, human)
        assert exported == replay_run.to_json()
        GameRun.from_json(exported)  # parses in the simulator schema

    def test_websocket_streams_all_events(self):
        created = create(seed=6)
        sid = created["id"]
        symbol = (created["word"][0] + 1) % 8
        client.post(f"/sessions/{sid}/moves", json={"symbol": symbol})
        client.delete(f"/sessions/{sid}")
        received = []
        with client.websocket_connect(f"/sessions/{sid}/events") as ws:
            while True:
                try:
                    received.append(ws.receive_json())
                except Exception:
                    break
        assert [e["seq"] for e in received] == list(range(len(received)))
        assert received[-1]["type"] == "state"
        assert len(received) >= 4
