"""Local JSON API over HTTP, consumed by the browser board.

All handlers call pure library functions; the only shared mutable state
is a lock-guarded store of named patterns.  Patterns are encoded as
{"cells": [[x, y], ...]} sorted by (y desc, x asc); moves as
{"anchor": [x,y], "from": [x,y], "to": [x,y]}.
"""
from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import explorer, filling, normalform, pathfinder, tep
from .core import Move, Point, edges_of_triangle, legal_moves, line_pattern, sorted_cells
from .core import apply_move as core_apply_move
from .errors import (
    BadParams,
    BadSize,
    CapExceeded,
    IllegalMove,
    NotABasis,
    NotSameOrbit,
    NotSameTriangle,
    NotTep,
    TooLarge,
    TsolError,
)

log = logging.getLogger("tsol.server")

STATIC_ROOT = Path(__file__).resolve().parents[2] / "frontend" / "dist"

ERROR_CODES = {
    IllegalMove: "illegal_move",
    NotSameOrbit: "not_same_orbit",
    CapExceeded: "cap_exceeded",
    TooLarge: "too_large",
    NotTep: "not_tep",
    NotABasis: "not_a_basis",
    NotSameTriangle: "not_same_triangle",
    BadParams: "bad_params",
    BadSize: "bad_size",
}

_POINT = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}
_PATTERN = {
    "type": "object",
    "properties": {"cells": {"type": "array", "items": _POINT}},
    "required": ["cells"],
}
_MOVE = {
    "type": "object",
    "properties": {"anchor": _POINT, "from": _POINT, "to": _POINT},
    "required": ["anchor", "from", "to"],
}
_NORMAL_FORM = {
    "type": "object",
    "properties": {
        "parts": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"v": _POINT, "n": {"type": "integer"}, "k": {"type": "integer"}},
                "required": ["v", "n", "k"],
            },
        }
    },
    "required": ["parts"],
}
_MOVE_SEQUENCE = {
    "type": "object",
    "properties": {"start": _PATTERN, "moves": {"type": "array", "items": _MOVE}},
    "required": ["start", "moves"],
}

SCHEMAS = {
    "/api/health": {"type": "object", "properties": {"status": {"type": "string"}},
                    "required": ["status"]},
    "/api/fill": {
        "type": "object",
        "properties": {"filling": _PATTERN, "decomposition": _NORMAL_FORM["properties"]["parts"],
                       "excess": {"type": "integer"}},
        "required": ["filling", "excess"],
    },
    "/api/moves": {"type": "object", "properties": {"moves": {"type": "array", "items": _MOVE}},
                   "required": ["moves"]},
    "/api/apply": {"type": "object", "properties": {"pattern": _PATTERN}, "required": ["pattern"]},
    "/api/normal-form": _NORMAL_FORM,
    "/api/normalize-path": _MOVE_SEQUENCE,
    "/api/path": _MOVE_SEQUENCE,
    "/api/orbit-count": {"type": "object", "properties": {"count": {"type": "integer"}},
                         "required": ["count"]},
    "/api/tep/complete": {
        "type": "object",
        "properties": {"values": {"type": "array"}},
        "required": ["values"],
    },
    "/api/preset": _PATTERN,
}


def encode_pattern(P) -> dict:
    return {"cells": [[p.x, p.y] for p in sorted_cells(P)]}


def decode_pattern(obj) -> frozenset:
    if not isinstance(obj, dict) or "cells" not in obj:
        raise ValueError("expected a pattern object with 'cells'")
    return frozenset(Point(int(c[0]), int(c[1])) for c in obj["cells"])


def encode_move(m: Move) -> dict:
    return {"anchor": list(m.anchor), "from": list(m.src), "to": list(m.dst)}


def decode_move(obj) -> Move:
    return Move(
        Point(*(int(v) for v in obj["anchor"])),
        Point(*(int(v) for v in obj["from"])),
        Point(*(int(v) for v in obj["to"])),
    )


def encode_normal_form(nf) -> dict:
    return {"parts": [{"v": [v.x, v.y], "n": n, "k": k} for v, n, k in nf.parts]}


def encode_sequence(seq) -> dict:
    return {"start": encode_pattern(seq.start), "moves": [encode_move(m) for m in seq.moves]}


class _Api:
    """Request-independent service logic; HTTP plumbing lives in the handler."""

    def __init__(self):
        self._store = {}
        self._lock = threading.Lock()

    # --- handlers keyed by (method, path) ----------------------------------

    def health(self, _body):
        return {"status": "ok"}

    def fill(self, body):
        P = decode_pattern(body.get("pattern"))
        filled = filling.fill(P)
        parts = []
        excess_total = 0
        if P:
            dec = filling.decompose(filled)
            rep = filling.excess(P)
            excess_total = rep.excess
            per = dict(rep.per_part)
            parts = [
                {"v": [v.x, v.y], "n": k, "k": per.get(i, 0)}
                for i, (v, k) in enumerate(dec.parts)
            ]
        return {"filling": encode_pattern(filled), "decomposition": parts, "excess": excess_total}

    def moves(self, body):
        P = decode_pattern(body.get("pattern"))
        return {"moves": [encode_move(m) for m in legal_moves(P)]}

    def apply(self, body):
        P = decode_pattern(body.get("pattern"))
        m = decode_move(body.get("move"))
        return {"pattern": encode_pattern(core_apply_move(P, m))}

    def normal_form(self, body):
        P = decode_pattern(body.get("pattern"))
        return encode_normal_form(normalform.normal_form(P))

    def normalize_path(self, body):
        P = decode_pattern(body.get("pattern"))
        seq = pathfinder.to_normal_form(P)
        if pathfinder.replay(seq) != normalform.realize(normalform.normal_form(P)):
            raise TsolError("internal replay check failed")
        return encode_sequence(seq)

    def path(self, body):
        P = decode_pattern(body.get("from"))
        Q = decode_pattern(body.get("to"))
        seq = pathfinder.path_between(P, Q)
        if pathfinder.replay(seq) != Q:
            raise TsolError("internal replay check failed")
        return encode_sequence(seq)

    def orbit_count(self, body):
        P = decode_pattern(body.get("pattern"))
        cap = int(body.get("cap", 200_000))
        return {"count": explorer.orbit_size(P, vertex_cap=cap)}

    def tep_complete(self, body):
        fam = tep.parse_rule_spec(str(body.get("rule", "xor")))
        n = int(body["n"])
        values = {
            Point(int(x), int(y)): int(s) for x, y, s in body.get("values", [])
        }
        full = tep.complete(fam, values, n)
        return {"values": [[p.x, p.y, s] for p, s in sorted(full.items(), key=lambda kv: (-kv[0].y, kv[0].x))]}

    def save_pattern(self, body):
        name = str(body.get("name", ""))
        P = decode_pattern(body.get("pattern"))
        if not name:
            raise ValueError("a nonempty name is required")
        with self._lock:
            self._store[name] = P
        return {"saved": name}

    def load_pattern(self, query):
        name = query.get("name", [""])[0]
        with self._lock:
            if name not in self._store:
                raise KeyError(name)
            P = self._store[name]
        return encode_pattern(P)

    def preset(self, query):
        name = query.get("name", [""])[0]
        seed = int(query.get("seed", ["0"])[0])
        if name.startswith("line-"):
            return encode_pattern(line_pattern(int(name[5:])))
        if name.startswith("edges-"):
            n = int(name[6:])
            h, v, d = edges_of_triangle(n)
            return {
                "cells": encode_pattern(h)["cells"],
                "vertical": encode_pattern(v)["cells"],
                "diagonal": encode_pattern(d)["cells"],
            }
        if name.startswith("pnk-"):
            n, k = (int(t) for t in name[4:].split("-"))
            return encode_pattern(normalform.line_with_excess(n, k))
        if name.startswith("random-"):
            n = int(name[7:])
            steps = 12 * n * n
            return encode_pattern(explorer.random_walk(line_pattern(n), steps, seed=seed))
        raise ValueError(f"unknown preset {name!r}")


class _Handler(BaseHTTPRequestHandler):
    api: _Api = None  # set by serve()

    def log_message(self, fmt, *args):
        log.info("%s " + fmt, self.address_string(), *args)

    def _send_json(self, status: int, obj):
        data = json.dumps(obj, sort_keys=True).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _dispatch(self, fn, arg):
        try:
            self._send_json(200, fn(arg))
        except (ValueError, KeyError, TypeError) as e:
            self._send_json(400, {"error": "bad_request", "detail": str(e)})
        except tuple(ERROR_CODES) as e:
            self._send_json(422, {"error": ERROR_CODES[type(e)], "detail": str(e)})
        except TsolError as e:
            self._send_json(500, {"error": "internal", "detail": str(e)})

    def do_GET(self):
        url = urlparse(self.path)
        query = parse_qs(url.query)
        if url.path == "/api/health":
            return self._dispatch(self.api.health, None)
        if url.path == "/api/preset":
            return self._dispatch(self.api.preset, query)
        if url.path == "/api/patterns":
            return self._dispatch(self.api.load_pattern, query)
        return self._serve_static(url.path)

    def do_POST(self):
        url = urlparse(self.path)
        length = int(self.headers.get("Content-Length", 0))
        try:
            body = json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError:
            return self._send_json(400, {"error": "bad_request", "detail": "invalid JSON"})
        routes = {
            "/api/fill": self.api.fill,
            "/api/moves": self.api.moves,
            "/api/apply": self.api.apply,
            "/api/normal-form": self.api.normal_form,
            "/api/normalize-path": self.api.normalize_path,
            "/api/path": self.api.path,
            "/api/orbit-count": self.api.orbit_count,
            "/api/tep/complete": self.api.tep_complete,
            "/api/patterns": self.api.save_pattern,
        }
        fn = routes.get(url.path)
        if fn is None:
            return self._send_json(404, {"error": "not_found"})
        return self._dispatch(fn, body)

    def _serve_static(self, path: str):
        if path == "/":
            path = "/index.html"
        target = (STATIC_ROOT / path.lstrip("/")).resolve()
        if not str(target).startswith(str(STATIC_ROOT)) or not target.is_file():
            return self._send_json(404, {"error": "not_found"})
        types = {".html": "text/html", ".js": "text/javascript", ".css": "text/css",
                 ".map": "application/json"}
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", types.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def make_server(port: int = 8023) -> ThreadingHTTPServer:
    handler = type("Handler", (_Handler,), {"api": _Api()})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(port: int = 8023):
    try:
        httpd = make_server(port)
    except OSError as e:
        raise SystemExit(f"error: cannot bind port {port}: {e}")
    log.info("serving on http://127.0.0.1:%d", port)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
