import pytest

# -E NAME: marks skipped, or None to run only the tests marked NAME
SKIP = {
    "short": ("long_test",),
    "long": (),
    "release": (),
    "search": None,
}


def pytest_addoption(parser):
    lines = ["NAME: one of " + ", ".join(SKIP) + "."]
    for name, marks in SKIP.items():
        if marks is None:
            lines.append(f"'{name}': only tests marked {name}.")
        elif marks:
            lines.append(f"'{name}': skip tests marked {', '.join(marks)}.")
        else:
            lines.append(f"'{name}': run everything.")
    parser.addoption("-E", action="store", metavar="NAME", default="short", choices=list(SKIP), help=" ".join(lines))


def pytest_runtest_setup(item):
    env = item.config.getoption("-E")
    marks = {m.name for m in item.iter_markers()}
    skipped = SKIP[env]
    if skipped is None:
        if env not in marks:
            pytest.skip(f"only tests marked '{env}' run with -E {env}")
    elif marks & set(skipped):
        pytest.skip(f"marked {', '.join(sorted(marks & set(skipped)))}, skipped with -E {env}")
