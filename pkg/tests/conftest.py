import re
from collections import defaultdict

CRITERIA = {
    1: "rule of succession",
    2: "boundary-mass posterior",
    3: "Bayes factor",
    4: "post-failure dynamics",
    5: "credible intervals",
    6: "confidence construction",
    7: "coverage",
    8: "maximum entropy",
    9: "information gain",
    10: "consistency algebra",
    11: "Cromwell guard",
}

_PATTERN = re.compile(r"test_acceptance\.py::test_c(\d\d)_")


def pytest_terminal_summary(terminalreporter):
    results = defaultdict(lambda: [0, 0])
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", "call") != "call" and key == "passed":
                continue
            m = _PATTERN.search(rep.nodeid)
            if m:
                results[int(m.group(1))][0 if key == "passed" else 1] += 1
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num, name in CRITERIA.items():
        if num not in results:
            continue
        ok, bad = results[num]
        status = "PASS" if bad == 0 else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {status}  {name} ({ok} passed, {bad} failed)")
