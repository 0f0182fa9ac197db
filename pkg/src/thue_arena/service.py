"""Live play service: a human plays the adversary against the engine's
builder strategy.

The session core is plain Python (the HTTP layer wraps it), so an offline
replay of the same human symbols goes through the identical code path and
reproduces the identical run and event stream.  Sessions are in-memory;
ending a session exports the full run in the simulator's format.
"""

from __future__ import annotations

import asyncio
import threading
import uuid

from .engines import ANN, BEN, GameConfig, GameRun, MoveRecord, WordState, _erase_candidates
from .sequences import GameSequence
from .strategies import ConfigurationError, RandomSource, _nonrep_exclusions

GAME_MIN_SYMBOLS = {"erase": 4, "nonrep": 3}
DEFAULT_SYMBOLS = {"erase": 8, "nonrep": 6}


class SessionError(Exception):
    def __init__(self, code: str, message: str, status: int):
        super().__init__(message)
        self.code = code
        self.status = status


class GameSession:
    """One live game; the engine is the builder, the caller is the adversary."""

    def __init__(self, game: str, alphabet_size: int | None, seed: int):
        if game not in GAME_MIN_SYMBOLS:
            raise ConfigurationError(f"unknown game {game!r}")
        if alphabet_size is None:
            alphabet_size = DEFAULT_SYMBOLS[game]
        if alphabet_size < GAME_MIN_SYMBOLS[game]:
            raise ConfigurationError(
                f"the {game} game needs at least {GAME_MIN_SYMBOLS[game]} symbols"
            )
        if alphabet_size > 255:
            raise ConfigurationError("alphabet sizes above 255 are not supported")
        self.id = uuid.uuid4().hex
        self.game = game
        self.alphabet_size = alphabet_size
        self.seed = seed
        self.min_size = 1 if game == "erase" else 2
        self.rng = RandomSource(seed)
        self.state = WordState(alphabet_size)
        self.moves: list[MoveRecord] = []
        self.ann_choices: list[int] = []
        self.events: list[dict] = []
        self.status = "awaiting_engine"
        self.lock = threading.Lock()
        self._advance_engine()

    # -- mechanics ------------------------------------------------------------

    def _emit(self, event_type: str, **fields) -> None:
        self.events.append({"seq": len(self.events), "type": event_type, **fields})

    def _engine_to_move(self) -> bool:
        if self.game == "erase":
            return (len(self.moves) + 1) % 2 == 1
        return len(self.state.w) % 2 == 0

    def _apply(self, mover: str, symbol: int) -> None:
        w = self.state.w
        erased = self.state.apply(symbol, self.min_size)
        self.moves.append(
            MoveRecord(len(self.moves) + 1, mover, symbol, erased, len(w))
        )
        if mover == ANN:
            self.ann_choices.append(symbol)
        self._emit("appended", mover=mover, symbol=symbol)
        if erased:
            if self.game == "erase":
                self._emit("erased", size=erased, start_index=len(w))
            else:
                self._emit("backtracked", to_length=len(w))
        # Interactive play upholds the same guarantees the simulator asserts.
        assert erased not in ((2, 3) if self.game == "erase" else (1, 2, 3, 4))

    def _advance_engine(self) -> None:
        w = self.state.w
        while self._engine_to_move():
            if self.game == "erase":
                candidates = _erase_candidates(w, self.alphabet_size)
            else:
                excl = _nonrep_exclusions(w)
                candidates = [a for a in range(self.alphabet_size) if a not in excl]
            self._apply(ANN, self.rng.uniform_pick(candidates))
        self.status = "awaiting_human"
        self._emit("state", **self._state_fields())

    def _state_fields(self) -> dict:
        return {
            "word": list(self.state.w),
            "whose_turn": "human" if self.status == "awaiting_human" else self.status,
            "lengths": {"word": len(self.state.w), "moves": len(self.moves)},
        }

    # -- public surface ---------------------------------------------------------

    def submit_human(self, symbol: int) -> list[dict]:
        """Apply the human's move and every engine reply it triggers; returns
        the events added by this call, ending with a state event."""
        if self.status == "finished":
            raise SessionError("session_finished", "session is finished", 409)
        if self.status != "awaiting_human" or self._engine_to_move():
            raise SessionError("out_of_turn", "it is not your move", 409)
        if not isinstance(symbol, int) or not 0 <= symbol < self.alphabet_size:
            raise SessionError(
                "symbol_out_of_range",
                f"symbol must be in [0, {self.alphabet_size})",
                422,
            )
        mark = len(self.events)
        self._apply(BEN, symbol)
        self._advance_engine()
        return self.events[mark:]

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "game": self.game,
            "symbols": self.alphabet_size,
            "seed": self.seed,
            "status": self.status,
            **self._state_fields(),
            "event_count": len(self.events),
        }

    def export_run(self) -> GameRun:
        if self.game == "erase":
            config = GameConfig(
                "erase", self.alphabet_size, "human", self.seed, total_moves=len(self.moves)
            )
        else:
            config = GameConfig(
                "nonrep",
                self.alphabet_size,
                "human",
                self.seed,
                ann_budget=len(self.ann_choices),
            )
        return GameRun(
            config,
            list(self.moves),
            list(self.ann_choices),
            GameSequence(self.alphabet_size, list(self.state.w)),
        )

    def finish(self) -> GameRun:
        run = self.export_run()
        self.status = "finished"
        return run


def replay_human_run(
    game: str, alphabet_size: int | None, seed: int, human_symbols: list[int]
) -> tuple[GameRun, list[dict]]:
    """Offline replay of an interactive session: same seed, same human moves,
    same code path, hence the identical run and event stream."""
    session = GameSession(game, alphabet_size, seed)
    for symbol in human_symbols:
        session.submit_human(symbol)
    return session.export_run(), list(session.events)


# --- HTTP / WebSocket layer ---------------------------------------------------

try:  # pragma: no cover - exercised via the app below
    from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
    from pydantic import BaseModel

    HAVE_FASTAPI = True
except ImportError:  # pragma: no cover
    HAVE_FASTAPI = False

if HAVE_FASTAPI:
    import secrets

    _sessions: dict[str, GameSession] = {}
    _registry_lock = threading.Lock()

    class CreateSessionRequest(BaseModel):
        game: str = "erase"
        symbols: int | None = None
        seed: int | None = None

    class MoveRequest(BaseModel):
        symbol: int

    app = FastAPI(title="thue-arena play service", version="0.1.0")

    def _error(exc: SessionError):
        return HTTPException(
            status_code=exc.status, detail={"code": exc.code, "message": str(exc)}
        )

    def _get_session(session_id: str) -> GameSession:
        session = _sessions.get(session_id)
        if session is None:
            raise HTTPException(
                status_code=404,
                detail={"code": "unknown_session", "message": f"no session {session_id}"},
            )
        return session

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSessionRequest) -> dict:
        """Open a game; the engine's first move is already applied."""
        seed = request.seed if request.seed is not None else secrets.randbits(63)
        try:
            session = GameSession(request.game, request.symbols, seed)
        except ConfigurationError as exc:
            raise HTTPException(
                status_code=422,
                detail={"code": "invalid_config", "message": str(exc)},
            ) from exc
        with _registry_lock:
            _sessions[session.id] = session
        return {**session.snapshot(), "events": session.events}

    @app.post("/sessions/{session_id}/moves")
    def submit_move(session_id: str, request: MoveRequest) -> dict:
        session = _get_session(session_id)
        with session.lock:
            try:
                events = session.submit_human(request.symbol)
            except SessionError as exc:
                raise _error(exc) from exc
            return {"events": events, "state": session.snapshot()}

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str) -> dict:
        return _get_session(session_id).snapshot()

    @app.delete("/sessions/{session_id}")
    def end_session(session_id: str) -> dict:
        session = _get_session(session_id)
        with session.lock:
            run = session.finish()
        return {"run": run.to_json()}

    @app.websocket("/sessions/{session_id}/events")
    async def event_stream(websocket: WebSocket, session_id: str) -> None:
        """Stream every session event in order; safe to reconnect (events
        carry monotone sequence numbers)."""
        await websocket.accept()
        session = _sessions.get(session_id)
        if session is None:
            await websocket.close(code=4404)
            return
        cursor = 0
        try:
            while True:
                while cursor < len(session.events):
                    await websocket.send_json(session.events[cursor])
                    cursor += 1
                if session.status == "finished":
                    await websocket.close()
                    return
                await asyncio.sleep(0.05)
        except WebSocketDisconnect:
            return
