import re
from pathlib import Path


def test_library_tour_block_executes():
    readme = (Path(__file__).resolve().parent.parent / "README.md").read_text()
    match = re.search(r"## Library tour\n\n```python\n(.*?)```", readme, re.S)
    assert match, "README library tour block missing"
    namespace: dict = {}
    exec(match.group(1), namespace)  # noqa: S102 - executing our own docs
    assert "wrong_way" in namespace
