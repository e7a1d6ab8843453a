from fischeralg import verify


def test_builtin_sizes_are_consistent():
    for label, size, build in verify.builtin_specs():
        if size <= 200:
            assert build().n == size, label


def test_plane_suite_on_small_spaces():
    verdicts = verify.suite_planes(max_points=120)
    assert verdicts and all(v.passed for v in verdicts), [v.line() for v in verdicts if not v.passed]


def test_chevalley_suite():
    verdicts = verify.suite_chevalley(types=[("A", 3), ("D", 4)])
    assert all(v.passed for v in verdicts)


def test_verdict_line():
    assert verify.Verdict("x", False, "why").line() == "FAIL  x  why"
