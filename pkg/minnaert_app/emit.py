"""
结果输出：CSV 与 JSON

数值统一写成 17 位有效数字的科学计数法，复数拆成 _re / _im 两列。
同一文件的写入由 parallel.file_lock 串行化。
"""
import csv
import json
import math
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from minnaert_core.minnaert_logging import get_logger
from minnaert_core.parallel import file_lock

logger = get_logger(__name__)

NOT_APPLICABLE = "n/a"


def format_number(value) -> str:
    """float → '%.16e'（17 位有效数字）；nan 记为 n/a"""
    if value is None:
        return NOT_APPLICABLE
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return NOT_APPLICABLE
    return f"{value:.16e}"


def complex_columns(name: str) -> List[str]:
    return [f"{name}_re", f"{name}_im"]


def complex_cells(value) -> List[str]:
    if value is None or (isinstance(value, (complex, float, np.number)) and np.isnan(value)):
        return [NOT_APPLICABLE, NOT_APPLICABLE]
    value = complex(value)
    return [format_number(value.real), format_number(value.imag)]


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence], comments: Optional[Sequence[str]] = None) -> Path:
    """
    写 CSV；comments 以 '# ' 开头写在表头之前（元数据）

    rows 中的元素若不是字符串则经 format_number 格式化。
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with file_lock(str(path)):
        with path.open("w", newline="", encoding="utf-8") as f:
            for line in comments or ():
                f.write(f"# {line}\n")
            w = csv.writer(f, lineterminator="\n")
            w.writerow(list(header))
            count = 0
            for row in rows:
                w.writerow([cell if isinstance(cell, str) else format_number(cell) for cell in row])
                count += 1
    logger.info(f"✓ 已写入 {path} ({count} 行)")
    return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return None if math.isnan(value) or math.isinf(value) else value
    return obj


def write_json(path: Path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_jsonable(payload), ensure_ascii=False, indent=2, sort_keys=True)
    with file_lock(str(path)):
        path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"✓ 已写入 {path}")
    return path


def read_csv(path: Path) -> List[dict]:
    """读回 CSV（跳过 '#' 元数据行），测试与下游比较使用"""
    with Path(path).open("r", newline="", encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def read_metadata(path: Path) -> dict:
    """'# key: value' 形式的元数据行"""
    meta = {}
    with Path(path).open("r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
    return meta
