import json

import pytest

from prospecies_entry import create_cli


@pytest.fixture
def cli():
    return create_cli()


def run_json(runner, cli, *args):
    result = runner.invoke(cli, ['--json', *args])
    return result, json.loads(result.stdout) if result.stdout.strip() else None


def test_report_envelope(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'valuation', fixture_files['C'])
    assert result.exit_code == 0
    assert {"command", "instance_hash", "field", "seed", "result"} <= set(report)
    assert report["field"] == "Q"
    assert report["seed"] == 0
    assert report["result"]["arrow_ranks"] == {"alpha": [1, 1]}


def test_seed_option(runner, cli, fixture_files):
    result = runner.invoke(cli, ['--seed', '7', '--json', 'valuation', fixture_files['A']])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["seed"] == 7


def test_text_output(runner, cli, fixture_files):
    result = runner.invoke(cli, ['valuation', fixture_files['C']])
    assert result.exit_code == 0
    assert "c[1] = 2" in result.stdout
    assert "alpha: (1, 1)" in result.stdout


def test_tensor_algebra(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'tensor-algebra', fixture_files['B'])
    assert result.exit_code == 0
    assert report["result"]["dimension"] == 9
    assert report["metadata"]["path_oracle_dimension"] == 9


def test_preprojective(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'preprojective', '--truncate', '3', fixture_files['A'])
    assert result.exit_code == 0
    assert report["result"]["dimension"] == 4
    assert report["result"]["graded_dimensions"] == [2, 2, 0]
    assert report["result"]["finite_certified"] is True
    assert "casimir_convention" in report["metadata"]


def test_truncation_below_two_is_a_usage_error(runner, cli, fixture_files):
    result = runner.invoke(cli, ['preprojective', '--truncate', '1', fixture_files['A']])
    assert result.exit_code == 2


def test_present(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'present', fixture_files['B'])
    assert result.exit_code == 0
    assert (report["result"]["vertices"], report["result"]["arrows"], report["result"]["relations"]) == (4, 4, 1)
    assert report["result"]["rebuilt_dimension"] == 9
    assert report["result"]["certified"] is True


def test_present_pi(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'present-pi', '--check-degree', '3', fixture_files['A'])
    assert result.exit_code == 0
    assert report["result"]["relations"] == 2
    assert report["result"]["graded_dimensions"][:2] == [2, 2]


def test_check_dualisable(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'check', 'dualisable', fixture_files['C'])
    assert result.exit_code == 0
    assert report["result"]["dualisable"] is True
    assert report["result"]["arrows"] == {"alpha": "true"}


def test_check_gp(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'check', 'gp', '--module', 'local:2', fixture_files['C'])
    assert result.exit_code == 0
    assert report["result"] == {"gorenstein_projective": "true"}


def test_check_gorenstein(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'check', 'gorenstein', '--module', 'local:1', fixture_files['A'])
    assert result.exit_code == 0
    assert report["result"]["conditions"] == [True] * 6


def test_resolve_defaults_to_local_modules(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'resolve', fixture_files['A'])
    assert result.exit_code == 0
    assert report["metadata"]["modules"] == ["local:1", "local:2"]
    assert [r["projective_dimension"]["value"] for r in report["result"]] == [1, 0]


def test_reflect_sigma(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'reflect', fixture_files['A'], '--vertex', '1', '--dir=+',
                              '--module', 'simple:2', '--truncate', '3')
    assert result.exit_code == 0
    assert report["result"]["before"] == {"1": 0, "2": 1}
    assert report["result"]["after"] == {"1": 1, "2": 1}
    assert report["result"]["sequences_exact"] is True


def test_reflect_bgp(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'reflect', fixture_files['A'], '--vertex', '2', '--dir=+',
                              '--functor', 'bgp', '--module', 'local:1')
    assert result.exit_code == 0
    assert report["result"]["after"] == {"1": 1, "2": 1}


def test_separate_and_stable_hom(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'separate', fixture_files['A'])
    assert result.exit_code == 0
    assert report["result"]["gamma_dimension"] == 3
    result, report = run_json(runner, cli, 'stable-hom', fixture_files['A'], '--module', 'simple:1',
                              '--other', 'simple:1')
    assert result.exit_code == 0
    assert report["result"] == {"gamma": 1, "separated": 1, "equal": True}


def test_split(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'split', fixture_files['A'])
    assert result.exit_code == 0
    assert report["result"]["certified"] is True
    assert report["result"]["summands"] == ["2"]


def test_domain_error_exits_with_one(runner, cli, fixture_files):
    result, report = run_json(runner, cli, 'tensor-algebra', fixture_files['loop'])
    assert result.exit_code == 1
    assert report["error"] == "CyclicQuiver"
    assert report["command"] == "tensor-algebra"


def test_unknown_module_kind_exits_with_one(runner, cli, fixture_files):
    result = runner.invoke(cli, ['check', 'gp', '--module', 'weird', fixture_files['A']])
    assert result.exit_code == 1
    assert "Unknown module kind" in result.stderr


def test_parse_error_exits_with_two(runner, cli, instance_file):
    path = instance_file("field Q;\nquiver { vertex 1 $; }")
    result, report = run_json(runner, cli, 'valuation', path)
    assert result.exit_code == 2
    assert report["error"] == "ParseError"
    assert report["context"]["line"] == "2"


def test_usage_errors_exit_with_two(runner, cli, fixture_files):
    assert runner.invoke(cli, ['no-such-command']).exit_code == 2
    assert runner.invoke(cli, ['valuation', 'missing.prosp']).exit_code == 2
    assert runner.invoke(cli, ['reflect', fixture_files['A'], '--vertex', '1', '--dir=x']).exit_code == 2
