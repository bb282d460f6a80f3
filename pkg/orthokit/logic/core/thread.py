# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Worker threads for splitting a frame search into ranges.

Ranges are numbered in canonical order. Once a range reports a hit, the
ranges after it are skipped: only the lowest numbered hit can be returned.
"""

import collections
import logging
import threading

LOG = logging.getLogger(__name__)

_STOP = object()


class RangeTask:
    def __init__(self, index, func, part):
        self.index = index
        self.func = func
        self.part = part
        self.skipped = False
        self._done = threading.Event()
        self._value = None
        self._error = None

    def run(self):
        try:
            if not self.skipped:
                self._value = self.func(self.part)
        except Exception as e:
            LOG.debug("Range %s failed: %r", self.index, e)
            self._error = e
        finally:
            self._done.set()

    def result(self):
        self._done.wait()
        if self._error is not None:
            raise self._error
        return self._value


class SoftThreadPool:
    """Daemon threads taking :class:`RangeTask` objects from a shared queue."""

    def __init__(self, nthreads=4):
        self.nthreads = nthreads
        self._queue = collections.deque()
        self._ready = threading.Condition()
        self._tasks = []
        self._threads = []

    def __enter__(self):
        for _ in range(self.nthreads):
            t = threading.Thread(target=self._work, daemon=True)
            t.start()
            self._threads.append(t)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        with self._ready:
            self._queue.extend([_STOP] * len(self._threads))
            self._ready.notify_all()

    def _work(self):
        while True:
            with self._ready:
                while not self._queue:
                    self._ready.wait()
                task = self._queue.popleft()
            if task is _STOP:
                return
            task.run()
            if task._value is not None:
                self.skip_after(task.index)

    def submit(self, func, part):
        with self._ready:
            task = RangeTask(len(self._tasks), func, part)
            self._tasks.append(task)
            self._queue.append(task)
            self._ready.notify()
            return task

    def skip_after(self, index):
        with self._ready:
            for task in self._tasks[index + 1 :]:
                task.skipped = True


def ordered_map(func, parts, nthreads=1):
    """``func`` applied to each part, in part order.

    A part whose result is not ``None`` makes every later part return
    ``None`` without being searched. With one thread the parts run inline.
    """
    parts = list(parts)
    if nthreads <= 1 or len(parts) <= 1:
        results = []
        for part in parts:
            value = None if any(r is not None for r in results) else func(part)
            results.append(value)
        return results

    with SoftThreadPool(nthreads=min(nthreads, len(parts))) as pool:
        tasks = [pool.submit(func, part) for part in parts]
        results = [t.result() for t in tasks]
    LOG.debug("%d of %d ranges skipped", sum(t.skipped for t in tasks), len(tasks))
    return results
