from sphere_dubins import CheckStatus, get_checks, run_verification, DomainError

BOUND_CHECKS = ['delta-l-positive', 'delta-l-prime-bound', 'gc-nonoptimality']


def test_all_checks_pass():
    report = run_verification()
    for c in report.checks:
        assert c.status == CheckStatus.PASS, c.as_line()
    assert report.get_status() == CheckStatus.PASS
    assert report.failed() == []
    text = report.as_text()
    assert text.endswith('PASS: %d of %d checks passed\n' % (len(report.checks), len(report.checks)))


def test_names_are_unique():
    names = [c.name for c in get_checks()]
    assert len(set(names)) == len(names) == 12


def test_tight_tolerance_fails():
    report = run_verification(tolerance=1e-20, dl_samples=50)
    assert report.get_status() == CheckStatus.FAIL
    by_name = dict((c.name, c) for c in report.checks)
    assert by_name['closed-form-vs-integrator'].status == CheckStatus.FAIL
    assert by_name['closed-form-vs-integrator'].tolerance == 1e-20
    for name in BOUND_CHECKS:
        assert by_name[name].status == CheckStatus.PASS
        assert by_name[name].tolerance is None
    assert report.as_text().splitlines()[-1].startswith('FAIL: ')


def test_sample_count():
    report = run_verification(dl_samples=10)
    by_name = dict((c.name, c) for c in report.checks)
    assert 'over 10 samples' in by_name['delta-l-positive'].detail
    assert by_name['delta-l-positive'].status == CheckStatus.PASS


def test_to_yaml():
    data = run_verification(dl_samples=10).to_yaml()
    assert list(data) == ['status', 'checks']
    for c in data['checks']:
        assert list(c) == ['name', 'status', 'measured', 'tolerance', 'detail']
        assert isinstance(c['measured'], float)


def test_bad_samples():
    try:
        run_verification(dl_samples=0)
    except DomainError:
        pass
    else:
        raise AssertionError()


if __name__ == '__main__':
    import pytest

    pytest.main([__file__])
