"""Keeps the prose docs honest against the implementation."""

import re
from pathlib import Path

from steptrace.interpreter import TEMPLATES

DOCS_DIR = Path(__file__).resolve().parent.parent / "docs"

ROW = re.compile(r"^\| `([a-z-]+)` \| (.+) \|$")


def documented_templates() -> dict:
    rows = {}
    for line in (DOCS_DIR / "templates.md").read_text().splitlines():
        m = ROW.match(line)
        if m and m.group(1) != "id":
            rows[m.group(1)] = m.group(2)
    return rows


def test_template_table_matches_implementation():
    docs = documented_templates()
    assert set(docs) == set(TEMPLATES)
    mismatched = {k for k in docs if docs[k] != TEMPLATES[k]}
    assert not mismatched, f"doc text drifted for: {sorted(mismatched)}"


def test_template_table_has_no_duplicate_rows():
    # re-scan counting raw occurrences; the dict in the helper would mask them
    seen = []
    for line in (DOCS_DIR / "templates.md").read_text().splitlines():
        m = ROW.match(line)
        if m and m.group(1) != "id":
            seen.append(m.group(1))
    assert len(seen) == len(set(seen))


def test_format_doc_names_every_runtime_error_kind():
    from steptrace.trace import RUNTIME_ERROR_KINDS

    text = (DOCS_DIR / "trace-format.md").read_text()
    missing = [k for k in RUNTIME_ERROR_KINDS if k not in text]
    assert not missing, missing


def test_format_doc_names_every_validation_issue_kind():
    import steptrace.trace

    impl = Path(steptrace.trace.__file__).read_text()
    kinds = set(re.findall(r'DocIssue\(\s*"([A-Za-z]+)"', impl))
    assert len(kinds) >= 10  # the scrape itself has to keep working
    text = (DOCS_DIR / "trace-format.md").read_text()
    missing = sorted(k for k in kinds if k not in text)
    assert not missing, missing
