import datetime as dt
from pathlib import Path

import pytest

D = dt.date(2020, 6, 9)

TOY_LABELED = [
    ("大涨真开心", 2),
    ("又绿了好气", 0),
    ("横盘观望", 1),
    ("放量上攻看多", 2),
    ("跌停割肉离场", 0),
    ("没消息面平静", 1),
    ("抄底成功吃肉", 2),
    ("被套牢了难受", 0),
    ("成交量一般", 1),
    ("强势反弹信心足", 2),
]


def cleaned_lines(texts):
    lines = ["date\ttext\tchar_len\treads\tcomments\tsource"]
    for i, text in enumerate(texts):
        day = D + dt.timedelta(days=i)
        lines.append(f"{day.isoformat()}\t{text}\t{len(text)}\t{10 + i}\t0\tguba")
    return "\n".join(lines) + "\n"


@pytest.fixture
def write_cleaned(tmp_path):
    def _write(texts, name="cleaned.tsv"):
        path = tmp_path / name
        path.write_text(cleaned_lines(texts), "utf-8")
        return path

    return _write


@pytest.fixture
def write_labeled(tmp_path):
    def _write(rows, name="labeled.tsv"):
        lines = ["text\tlabel"]
        lines += [f"{text}\t{label}" for text, label in rows]
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", "utf-8")
        return path

    return _write
