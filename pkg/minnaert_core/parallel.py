"""
并行执行
========

worker 数由环境变量 MINNAERT_THREADS 控制，默认 min(4, CPU 数)。
结果始终按输入顺序返回，输出文件写入由文件锁串行化。
"""
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, TypeVar

from minnaert_core.minnaert_logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")

_file_locks: Dict[str, threading.Lock] = {}
_file_locks_guard = threading.Lock()


def worker_count() -> int:
    raw = os.getenv("MINNAERT_THREADS")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            logger.warning(f"MINNAERT_THREADS={raw!r} 不是整数，使用默认值")
        else:
            if value >= 1:
                return value
            logger.warning(f"MINNAERT_THREADS={value} 小于 1，使用默认值")
    return min(4, os.cpu_count() or 1)


def map_ordered(fn: Callable[[T], R], items: Iterable[T], workers: int = None) -> List[R]:
    """并行执行 fn，结果顺序与 items 一致；worker 为 1 时直接串行"""
    items = list(items)
    workers = workers or worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, item) for item in items]
        return [f.result() for f in futures]


def file_lock(path: str) -> threading.Lock:
    """同一路径共用一把锁"""
    key = os.path.abspath(path)
    with _file_locks_guard:
        lock = _file_locks.get(key)
        if lock is None:
            lock = threading.Lock()
            _file_locks[key] = lock
        return lock
