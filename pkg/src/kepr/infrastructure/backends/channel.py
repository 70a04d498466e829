"""Newline-delimited JSON request/response channels to out-of-process backends.

Each request is one JSON object on one line; the backend answers with one
JSON object on one line. Replies come back in request order. A reply of the
form ``{"error": "..."}`` is reported as a backend failure.
"""

import asyncio
import json
import logging
import shlex
from abc import ABC, abstractmethod
from collections import deque
from typing import Any, Deque, Dict, Optional, Tuple

from kepr.exceptions import BackendError

logger = logging.getLogger(__name__)

# Embedding replies can be long single lines.
STREAM_LIMIT = 1 << 24


class LineChannel(ABC):
    """Base channel: framing, serialization and error mapping.

    Without pipelining a lock holds the channel from write to reply. With
    pipelining requests are written as they arrive and a reader task hands
    replies to waiting callers first-in first-out.
    """

    def __init__(self, name: str, pipelining: bool = False):
        self.name = name
        self.pipelining = pipelining
        self._reader: Optional[asyncio.StreamReader] = None
        self._writer: Optional[asyncio.StreamWriter] = None
        self._lock = asyncio.Lock()
        self._open_lock = asyncio.Lock()
        self._pending: Deque[asyncio.Future] = deque()
        self._reader_task: Optional[asyncio.Task] = None

    @abstractmethod
    async def _connect(self) -> Tuple[asyncio.StreamReader, asyncio.StreamWriter]:
        """Open the underlying transport."""

    async def _ensure_open(self) -> None:
        async with self._open_lock:
            if self._writer is not None:
                return
            try:
                self._reader, self._writer = await self._connect()
            except (OSError, ValueError) as e:
                raise BackendError(self.name, f"cannot connect: {e}") from e
            if self.pipelining:
                self._reader_task = asyncio.create_task(self._read_replies())
            logger.debug(f"Opened channel to backend {self.name}")

    async def _write(self, payload: Dict[str, Any]) -> None:
        assert self._writer is not None
        self._writer.write((json.dumps(payload) + "\n").encode("utf-8"))
        await self._writer.drain()

    async def _read_one(self) -> Dict[str, Any]:
        assert self._reader is not None
        line = await self._reader.readline()
        if not line:
            raise BackendError(self.name, "connection closed before a reply was received")
        return self._decode(line)

    def _decode(self, line: bytes) -> Dict[str, Any]:
        try:
            reply = json.loads(line.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise BackendError(self.name, f"malformed reply: {e}") from e
        if not isinstance(reply, dict):
            raise BackendError(self.name, "malformed reply: expected a JSON object")
        if "error" in reply:
            raise BackendError(self.name, f"backend reported: {reply['error']}")
        return reply

    async def _read_replies(self) -> None:
        assert self._reader is not None
        try:
            while True:
                line = await self._reader.readline()
                if not line:
                    raise BackendError(self.name, "connection closed with requests in flight")
                if not self._pending:
                    logger.warning(f"Backend {self.name} sent an unsolicited reply")
                    continue
                future = self._pending.popleft()
                if future.done():
                    continue
                try:
                    future.set_result(self._decode(line))
                except BackendError as e:
                    future.set_exception(e)
        except Exception as e:
            if not isinstance(e, BackendError):
                e = BackendError(self.name, f"transport failure: {e}")
            while self._pending:
                future = self._pending.popleft()
                if not future.done():
                    future.set_exception(e)

    async def request(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        """Send one request and wait for its reply.

        Raises:
            BackendError: On transport failure, malformed reply or a backend error
        """
        await self._ensure_open()
        try:
            if not self.pipelining:
                async with self._lock:
                    await self._write(payload)
                    return await self._read_one()

            future = asyncio.get_running_loop().create_future()
            async with self._lock:
                # No future may be queued once the reader task has exited.
                if self._reader_task is None or self._reader_task.done():
                    raise BackendError(self.name, "connection closed")
                self._pending.append(future)
                try:
                    await self._write(payload)
                except BaseException:
                    # A failed write leaves no future queued for the next reply.
                    if future in self._pending:
                        self._pending.remove(future)
                    future.cancel()
                    raise
            return await future
        except BackendError:
            raise
        except (OSError, asyncio.IncompleteReadError, asyncio.LimitOverrunError) as e:
            raise BackendError(self.name, f"transport failure: {e}") from e

    async def aclose(self) -> None:
        if self._reader_task is not None:
            self._reader_task.cancel()
            self._reader_task = None
        if self._writer is not None:
            self._writer.close()
            try:
                await self._writer.wait_closed()
            except (OSError, BrokenPipeError):
                pass
            self._writer = None
            self._reader = None


class SubprocessChannel(LineChannel):
    """Talks to a child process over its standard input and output."""

    def __init__(self, name: str, command: str, pipelining: bool = False):
        super().__init__(name, pipelining)
        self.command = command
        self._process: Optional[asyncio.subprocess.Process] = None

    async def _connect(self) -> Tuple[asyncio.StreamReader, asyncio.StreamWriter]:
        argv = shlex.split(self.command)
        if not argv:
            raise ValueError("empty backend command")
        self._process = await asyncio.create_subprocess_exec(
            *argv,
            stdin=asyncio.subprocess.PIPE,
            stdout=asyncio.subprocess.PIPE,
            limit=STREAM_LIMIT,
        )
        assert self._process.stdout is not None and self._process.stdin is not None
        return self._process.stdout, self._process.stdin

    async def aclose(self) -> None:
        await super().aclose()
        if self._process is not None:
            try:
                await asyncio.wait_for(self._process.wait(), timeout=5)
            except asyncio.TimeoutError:
                self._process.kill()
                await self._process.wait()
            self._process = None


class SocketChannel(LineChannel):
    """Talks to a local socket: ``host:port`` over TCP or ``unix:/path``."""

    def __init__(self, name: str, address: str, pipelining: bool = False):
        super().__init__(name, pipelining)
        self.address = address

    async def _connect(self) -> Tuple[asyncio.StreamReader, asyncio.StreamWriter]:
        if self.address.startswith("unix:"):
            return await asyncio.open_unix_connection(self.address[5:], limit=STREAM_LIMIT)
        host, sep, port = self.address.rpartition(":")
        if not sep or not port.isdigit():
            raise ValueError(
                f"socket address must be 'host:port' or 'unix:/path', got {self.address!r}"
            )
        return await asyncio.open_connection(host or "127.0.0.1", int(port), limit=STREAM_LIMIT)
