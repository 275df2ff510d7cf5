"""HTTP API backing the browser flex studio.

JSON over stdlib http.server. Sessions persist as MSG plus metadata under
state_dir. Geometry math stays server-side; clients render exactly what the
server reports. One step/steer may be in flight per session at a time;
concurrent mutation attempts get 409.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import numpy as np

from . import msgio
from .flex import FlexOptions, FlexState, Monitor, flex_step, steer_to_event
from .geometry import Embedding, Graph
from .refine import refine, residuals
from .rigidity import analyze
from .verify import verify_matchstick


@dataclass
class Session:
    session_id: str
    graph: Graph
    names: dict[str, int]
    initial: Embedding
    state: FlexState
    lock: threading.Lock = field(default_factory=threading.Lock)

    def max_residual(self) -> float:
        return float(np.max(np.abs(residuals(self.graph, self.state.embedding))))


class SessionStore:
    def __init__(self, state_dir: str | Path):
        self.state_dir = Path(state_dir)
        self.state_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._restore()

    def _restore(self) -> None:
        for meta_path in sorted(self.state_dir.glob("*.json")):
            sid = meta_path.stem
            try:
                meta = json.loads(meta_path.read_text())
                g, initial, names = msgio.read_msg((self.state_dir / f"{sid}.msg").read_text())
                current_path = self.state_dir / f"{sid}.current.msg"
                if current_path.exists():
                    _, current, _ = msgio.read_msg(current_path.read_text())
                else:
                    current = initial
                state = FlexState(embedding=current, arclength=float(meta.get("arclength", 0.0)))
                self.sessions[sid] = Session(sid, g, names, initial, state)
            except (OSError, ValueError):
                continue

    def create(self, msg_text: str) -> Session:
        g, emb, names = msgio.read_msg(msg_text)
        refined, _report = refine(g, emb)
        sid = uuid.uuid4().hex[:12]
        session = Session(sid, g, names, refined, FlexState.at(refined))
        with self._lock:
            self.sessions[sid] = session
        (self.state_dir / f"{sid}.msg").write_text(msgio.write_msg(g, refined, names))
        self._persist(session)
        return session

    def _persist(self, s: Session) -> None:
        (self.state_dir / f"{s.session_id}.current.msg").write_text(
            msgio.write_msg(s.graph, s.state.embedding, s.names))
        (self.state_dir / f"{s.session_id}.json").write_text(
            json.dumps({"arclength": s.state.arclength, "n_vertices": s.graph.n_vertices,
                        "n_edges": s.graph.n_edges}))

    def get(self, sid: str) -> Session | None:
        return self.sessions.get(sid)


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _coords_payload(emb: Embedding) -> list[list[float]]:
    return [[float(x), float(y)] for x, y in emb.coords]


class Handler(BaseHTTPRequestHandler):
    store: SessionStore  # set by serve()

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        try:
            return json.loads(self.rfile.read(length))
        except json.JSONDecodeError as exc:
            raise ApiError(400, f"bad JSON body: {exc}")

    def _session(self, sid: str) -> Session:
        session = self.store.get(sid)
        if session is None:
            raise ApiError(404, f"unknown session {sid}")
        return session

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):
        try:
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/graph", self.path)
            if m:
                s = self._session(m.group(1))
                self._send(200, {
                    "vertices": _coords_payload(s.state.embedding),
                    "edges": [[i, j] for i, j in s.graph.edges],
                    "markers": s.names,
                })
                return
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/report", self.path)
            if m:
                s = self._session(m.group(1))
                degrees = s.graph.degrees()
                cert = verify_matchstick(s.graph, s.state.embedding,
                                         int(degrees.min()), int(degrees.max()), eps=1e-6)
                rig = analyze(s.graph, s.state.embedding)
                self._send(200, {
                    "verification": cert.to_dict(),
                    "rigidity": rig.to_dict(),
                    "max_residual": s.max_residual(),
                })
                return
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/flexmodes", self.path)
            if m:
                s = self._session(m.group(1))
                rig = analyze(s.graph, s.state.embedding)
                self._send(200, {"modes": [[float(x) for x in mode] for mode in rig.flex_basis]})
                return
            raise ApiError(404, f"no route {self.path}")
        except ApiError as exc:
            self._send(exc.status, {"error": exc.message})
        except ValueError as exc:
            self._send(422, {"error": str(exc)})

    def do_POST(self):
        try:
            if self.path == "/sessions":
                body = self._read_json()
                text = body.get("msg_text")
                if not isinstance(text, str) or not text.strip():
                    raise ApiError(400, "msg_text (string) is required")
                try:
                    session = self.store.create(text)
                except ValueError as exc:
                    raise ApiError(400, str(exc))
                self._send(201, {
                    "session_id": session.session_id,
                    "n_vertices": session.graph.n_vertices,
                    "n_edges": session.graph.n_edges,
                })
                return
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/(step|steer|reset)", self.path)
            if not m:
                raise ApiError(404, f"no route {self.path}")
            session = self._session(m.group(1))
            action = m.group(2)
            if not session.lock.acquire(blocking=False):
                raise ApiError(409, "session busy: one step at a time")
            try:
                handler = {"step": self._do_step, "steer": self._do_steer,
                           "reset": self._do_reset}[action]
                handler(session, self._read_json())
            finally:
                session.lock.release()
        except ApiError as exc:
            self._send(exc.status, {"error": exc.message})

    def _do_step(self, session: Session, body: dict) -> None:
        h = float(body.get("h", 1e-2))
        rig = analyze(session.graph, session.state.embedding)
        if rig.internal_dof == 0:
            raise ApiError(400, "framework is rigid; no flex to step along")
        if "direction" in body:
            d = np.asarray(body["direction"], dtype=float)
            if d.shape != (2 * session.graph.n_vertices,):
                raise ApiError(400, "direction must have 2|V| entries")
            # project the client's direction onto the flex space
            B = rig.flex_basis
            d = B.T @ (B @ d)
            norm = float(np.linalg.norm(d))
            if norm < 1e-12:
                raise ApiError(400, "direction has no component in the flex space")
            d = d / norm
        else:
            idx = int(body.get("mode_index", 0))
            if not 0 <= idx < len(rig.flex_basis):
                raise ApiError(400, f"mode_index {idx} out of range")
            d = rig.flex_basis[idx]
            last = session.state.last_direction
            if last is not None and float(d @ last) < 0:
                d = -d
        try:
            session.state = flex_step(session.graph, session.state, d, h)
        except (ValueError, RuntimeError) as exc:
            raise ApiError(422, f"step failed: {exc}")
        self.store._persist(session)
        self._send(200, {
            "coordinates": _coords_payload(session.state.embedding),
            "max_residual": session.max_residual(),
            "arclength": session.state.arclength,
        })

    def _do_steer(self, session: Session, body: dict) -> None:
        try:
            monitor = Monitor(int(body["a"]), int(body["b"]), float(body["target"]))
        except (KeyError, TypeError, ValueError):
            raise ApiError(400, "steer needs integer a, b and numeric target")
        try:
            event, trace = steer_to_event(session.graph, session.state, monitor, FlexOptions())
        except (ValueError, RuntimeError) as exc:
            raise ApiError(422, f"steer failed: {exc}")
        session.state = event
        self.store._persist(session)
        self._send(200, {
            "coordinates": _coords_payload(event.embedding),
            "monitor": event.embedding.pair_distance(monitor.a, monitor.b),
            "target": monitor.target,
            "max_residual": session.max_residual(),
            "arclength": event.arclength,
            "trace": [{"step": t.step, "arclength": t.arclength, "monitor": t.monitor,
                       "max_residual": t.max_residual} for t in trace],
        })

    def _do_reset(self, session: Session, body: dict) -> None:
        session.state = FlexState.at(session.initial)
        self.store._persist(session)
        self._send(200, {
            "coordinates": _coords_payload(session.state.embedding),
            "max_residual": session.max_residual(),
            "arclength": 0.0,
        })


def make_server(port: int, state_dir: str | Path) -> ThreadingHTTPServer:
    store = SessionStore(state_dir)
    handler = type("BoundHandler", (Handler,), {"store": store})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(port: int, state_dir: str | Path) -> None:
    httpd = make_server(port, state_dir)
    print(f"serving on http://127.0.0.1:{port} (state in {state_dir})")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
