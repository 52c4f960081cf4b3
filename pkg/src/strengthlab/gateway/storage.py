"""One JSON file per elicitation session, with atomic, versioned mutation.

A session file holds a small record header (id, version, created/updated
timestamps) and the full session document. Files are written canonically,
so exporting a session is literally reading its file, and importing a file
that a previous export produced writes back the identical bytes.

Mutations take an optional expected version; a mismatch raises
``StaleVersionError`` and changes nothing. Per-session locks serialize
mutation by id while letting distinct sessions proceed in parallel.
"""

from __future__ import annotations

import os
import re
import threading
import uuid
from collections import defaultdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from ..elicitation import ElicitationSession
from ..errors import DomainError, StaleVersionError, UnknownSessionError
from ..jsoncodec import canonical_bytes, canonical_loads

_SAFE_ID = re.compile(r"^[A-Za-z0-9_-]{1,64}$")


def _now_utc() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


class SessionStore:
    """Directory of session files plus an in-process cache."""

    def __init__(self, root: str | Path, clock: Callable[[], str] | None = None):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._clock = clock or _now_utc
        self._cache: dict[str, tuple[dict, ElicitationSession]] = {}
        self._locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._registry_lock = threading.Lock()

    # -- paths and locks ----------------------------------------------------

    def _path(self, session_id: str) -> Path:
        if not _SAFE_ID.match(session_id):
            raise DomainError(f"malformed session id {session_id!r}")
        return self.root / f"{session_id}.json"

    def _lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks[session_id]

    # -- disk ----------------------------------------------------------------

    def _write(self, header: dict, session: ElicitationSession) -> None:
        doc = {"record": dict(header), "session": session.to_doc()}
        path = self._path(session.id)
        tmp = path.with_name(f".{path.name}.{uuid.uuid4().hex}.tmp")
        tmp.write_bytes(canonical_bytes(doc))
        os.replace(tmp, path)
        self._cache[session.id] = (dict(header), session)

    def _read(self, session_id: str) -> tuple[dict, ElicitationSession]:
        cached = self._cache.get(session_id)
        if cached is not None:
            return cached
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSessionError(f"no session {session_id!r}")
        doc = canonical_loads(path.read_bytes())
        header = dict(doc["record"])
        session = ElicitationSession.from_doc(doc["session"])
        self._cache[session_id] = (header, session)
        return header, session

    # -- public api -----------------------------------------------------------

    def create(self, session: ElicitationSession) -> dict:
        with self._lock(session.id):
            if self._path(session.id).exists():
                raise DomainError(f"session {session.id!r} already exists")
            now = self._clock()
            header = {
                "id": session.id,
                "version": session.version,
                "created": now,
                "updated": now,
            }
            self._write(header, session)
            return header

    def get(self, session_id: str) -> tuple[dict, ElicitationSession]:
        with self._lock(session_id):
            return self._read(session_id)

    def mutate(self, session_id: str, expected_version: int | None, fn):
        """Apply ``fn(session)`` under the session lock and persist.

        Returns ``(header, session, result)``. A stale expected version
        rejects the mutation before ``fn`` runs.
        """
        with self._lock(session_id):
            header, session = self._read(session_id)
            if expected_version is not None and expected_version != session.version:
                raise StaleVersionError(
                    "version token does not match the current session",
                    detail={
                        "expected": expected_version,
                        "current": session.version,
                    },
                )
            result = fn(session)
            header = dict(header)
            header["version"] = session.version
            header["updated"] = self._clock()
            self._write(header, session)
            return header, session, result

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    # -- interchange ------------------------------------------------------------

    def export_bytes(self, session_id: str) -> bytes:
        with self._lock(session_id):
            self._read(session_id)
            return self._path(session_id).read_bytes()

    def import_bytes(self, raw: bytes) -> dict:
        """Install a previously exported session file, header preserved."""
        try:
            doc = canonical_loads(raw)
        except ValueError as exc:
            raise DomainError(f"not valid JSON: {exc}") from exc
        if not isinstance(doc, dict) or "record" not in doc or "session" not in doc:
            raise DomainError("not a session export document")
        header = dict(doc["record"])
        try:
            session = ElicitationSession.from_doc(doc["session"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed session document: {exc!r}") from exc
        if header.get("id") != session.id:
            raise DomainError("record id and session id disagree")
        if header.get("version") != session.version:
            raise DomainError("record version and session version disagree")
        with self._lock(session.id):
            self._write(header, session)
        return header
