# minnaert_logging.py
import logging
import os
import threading
from typing import Dict, List

# ===== 全局配置 =====
LOG_FOLDER = os.getenv("MINNAERT_LOG_DIR", "logs")
FILE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
CONSOLE_FORMAT = "[%(levelname)s] %(name)s: %(message)s"

_console_handlers: List[logging.Handler] = []
_file_handlers: Dict[str, logging.Handler] = {}
_lock = threading.Lock()


def _file_handler(package: str, file_level) -> logging.Handler:
    """同一顶层包（minnaert_core / minnaert_app）的模块共用一个日志文件"""
    handler = _file_handlers.get(package)
    if handler is None:
        os.makedirs(LOG_FOLDER, exist_ok=True)
        handler = logging.FileHandler(os.path.join(LOG_FOLDER, f"{package}.log"), encoding="utf-8")
        handler.setLevel(file_level)
        handler.setFormatter(logging.Formatter(FILE_FORMAT))
        _file_handlers[package] = handler
    return handler


def get_logger(name: str, level=logging.DEBUG, console_level=logging.INFO, file_level=logging.DEBUG):
    """
    获取统一的 logger
    name: logger 名称（一般用模块名）
    level: logger 总等级
    console_level: 控制台打印等级
    file_level: 文件打印等级
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False
    with _lock:
        if logger.hasHandlers():
            logger.handlers.clear()  # 避免重复添加 handler
        logger.addHandler(_file_handler(name.split(".")[0], file_level))

        ch = logging.StreamHandler()
        ch.setLevel(console_level)
        ch.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        logger.addHandler(ch)
        _console_handlers.append(ch)
    return logger


def set_console_level(level) -> None:
    """调整所有已创建 logger 的控制台等级（命令行 --debug 使用），文件等级不变"""
    with _lock:
        for handler in _console_handlers:
            handler.setLevel(level)
