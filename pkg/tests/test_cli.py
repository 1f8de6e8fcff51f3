import json

import pytest
from click.testing import CliRunner

from app.backend.cli import cli, run
from app.backend.knots import parse_pd
from app.backend.version import __version__

RIGHT_TREFOIL = 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'
LEFT_TREFOIL = 'X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]'


@pytest.fixture
def invoke():
    runner = CliRunner()

    def _invoke(*args):
        return runner.invoke(cli, ['--no-color', *args])
    return _invoke


def _json(invoke, *args):
    result = invoke('--format', 'json', *args)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


def test_jones(invoke):
    """Test the Jones polynomial of the right trefoil."""
    result = invoke('jones', '--knot', 'trefoil')
    assert result.exit_code == 0
    assert result.output.strip() == '-t^4 + t^3 + t'


def test_jones_variants(invoke):
    assert invoke('jones', '--knot', 'trefoil', '--unnormalized').output.strip() == '-q^9 + q^5 + q^3 + q'
    assert invoke('jones', '--knot', 'kink', '--bracket').output.strip() == '-A^-3'
    assert invoke('jones', '--knot', 'trefoil', '--oracle').output.strip() == '-t^4 + t^3 + t'


def test_alexander(invoke):
    result = invoke('alexander', '--knot', '4_1')
    assert result.output.strip() == 't^2 - 3*t + 1'


def test_alexander_json(invoke):
    payload = _json(invoke, 'alexander', '--knot', 'trefoil', '--presentation')
    assert payload['determinant'] == 3
    assert payload['abelianization'] == 'Z'
    assert payload['genus_lower_bound'] == 1


def test_pd_literal(invoke):
    result = invoke('alexander', '--pd', RIGHT_TREFOIL)
    assert result.output.strip() == 't^2 - t + 1'


def test_file_selector(invoke, tmp_path):
    path = tmp_path / 'knots.pd'
    path.write_text(f'tref: {RIGHT_TREFOIL}\nleft: {LEFT_TREFOIL}\n', encoding='utf-8')
    payload = _json(invoke, 'jones', '--file', f'{path}:left')
    assert payload['knot'] == 'left'
    assert payload['jones'] == 't^-1 + t^-3 - t^-4'


def test_khovanov(invoke):
    result = invoke('khovanov', '--knot', 'trefoil', '--euler')
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == 'Kh^{0,1} = 1'
    assert lines[-1] == 'chi = -q^9 + q^5 + q^3 + q'


def test_khovanov_f2_json(invoke):
    payload = _json(invoke, 'khovanov', '--knot', 'trefoil', '--field', 'f2')
    assert payload['field'] == 'F2'
    assert [2, 7, 1] in payload['ranks']


def test_s(invoke):
    assert invoke('s', '--knot', 'trefoil').output.strip() == '2'
    assert invoke('s', '--knot', 'left-trefoil').output.strip() == '-2'
    payload = _json(invoke, 's', '--knot', 'figure-eight')
    assert payload['s'] == 0
    assert payload['smax'] - payload['smin'] == 2


def test_colorings(invoke):
    result = invoke('colorings', '--knot', 'trefoil', '--s3')
    assert result.output.strip().splitlines() == ['9', 'S3 homomorphisms: 12']
    assert invoke('colorings', '--knot', 'figure-eight', '--p', '5').output.strip() == '25'


def test_slice_report(invoke):
    result = invoke('slice-report', '--knot', 'trefoil')
    assert result.exit_code == 0
    assert 'right-trefoil: NotSlice' in result.output
    assert 'obstruction s-nonzero: s = 2' in result.output


def test_slice_report_json(invoke):
    payload = _json(invoke, 'slice-report', '--knot', 'figure-eight', '--skip-s')
    assert payload['verdict'] == 'NotSlice'
    assert payload['s'] is None
    assert [o['id'] for o in payload['obstructions']] == ['determinant-nonsquare']


def test_diagram_commands(invoke):
    mirrored = _json(invoke, 'mirror', '--knot', 'trefoil')
    assert parse_pd(mirrored['pd']) == parse_pd(LEFT_TREFOIL)
    assert mirrored['writhe'] == -3

    assert invoke('simplify', '--knot', 'kink').output.strip() == 'U'
    reversed_ = _json(invoke, 'reverse', '--knot', 'trefoil')
    assert reversed_['writhe'] == 3

    code = _json(invoke, 'gauss', '--knot', 'trefoil')['gauss']
    assert code.count('O') == 3 and code.count('U') == 3


def test_connect_sum(invoke):
    payload = _json(invoke, 'connect-sum', '--knot', 'trefoil', '--pd', LEFT_TREFOIL)
    assert payload['crossings'] == 6
    assert payload['writhe'] == 0
    result = invoke('connect-sum', '--knot', 'trefoil')
    assert result.exit_code == 2


def test_mutate_and_crossing_change(invoke):
    mutant = _json(invoke, 'mutate', '--knot', 'conway')
    assert mutant['crossings'] == 11
    assert invoke('jones', '--pd', mutant['pd']).output == invoke('jones', '--knot', 'kt').output

    changed = _json(invoke, 'crossing-change', '--knot', 'conway')
    assert invoke('jones', '--pd', changed['pd']).output.strip() == '1'


def test_mutate_needs_region(invoke):
    result = invoke('mutate', '--knot', 'trefoil')
    assert result.exit_code == 7
    assert 'no recorded mutation region' in result.output


def test_catalog_listing(invoke):
    result = invoke('catalog', '--validate')
    assert result.exit_code == 0
    assert 'conway' in result.output
    assert 'all reference values match' in result.output


def test_export(invoke, tmp_path):
    output = tmp_path / 'report.json'
    result = invoke('export', '--knot', 'trefoil', '--knot', 'unknot', '--skip-s', '--output', str(output))
    assert result.exit_code == 0
    document = json.loads(output.read_text(encoding='utf-8'))
    assert [k['name'] for k in document['knots']] == ['right-trefoil', 'unknot']


def test_transfer_with_stand_in_sibling(invoke, tmp_path):
    """A stand-in sibling with an obstruction marks the Conway knot not slice."""
    siblings = tmp_path / 'siblings.pd'
    siblings.write_text(f'kprime: {RIGHT_TREFOIL}\n', encoding='utf-8')
    runner = CliRunner()
    result = runner.invoke(cli, ['--no-color', '--catalog-file', str(siblings), 'transfer',
                                 '--cert', 'conway_kprime.cert', '--knots', 'conway,kprime', '--skip-s'])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0] == 'conway: NOT SLICE (via trace sibling kprime, s=not computed)'
    assert lines[1] == 'kprime: NOT SLICE (determinant-nonsquare, s=not computed)'


def test_transfer_untrusted_certificate(invoke, tmp_path):
    cert = tmp_path / 'untrusted.cert.yaml'
    cert.write_text('knot_a: unknot\nknot_b: trefoil\nprovenance: fixture\ntrusted: false\n', encoding='utf-8')
    result = invoke('transfer', '--cert', str(cert), '--knots', 'unknot,trefoil', '--skip-s')
    assert result.exit_code == 5


@pytest.mark.parametrize('args, code', [
    (['jones', '--knot', 'no-such-knot'], 6),
    (['jones', '--pd', 'X[1,4,2,5] X[3,6,4]'], 3),
    (['jones'], 2),
    (['jones', '--knot', 'trefoil', '--pd', RIGHT_TREFOIL], 2),
    (['jones', '--pd', 'X[4,1,3,2] X[2,3,1,4]'], 7),
    (['khovanov', '--knot', 'figure-eight', '--size-limit', '1'], 4),
    (['colorings', '--knot', 'trefoil', '--p', '4'], 7),
    (['transfer', '--cert', 'missing.cert.yaml', '--knots', 'conway,kt'], 5),
    (['transfer', '--cert', 'conway_kprime.cert', '--knots', 'conway'], 2),
])
def test_exit_codes(invoke, args, code):
    assert invoke(*args).exit_code == code


def test_error_message_on_stderr(invoke):
    result = invoke('jones', '--knot', 'no-such-knot')
    assert 'error: Unknown knot: no-such-knot' in result.output


def test_version(invoke):
    result = invoke('--version')
    assert __version__ in result.output


def test_run_returns_exit_code():
    assert run(['--no-color', 'jones', '--knot', 'no-such-knot']) == 6
    assert run(['--no-color', 'gauss', '--knot', 'unknot']) == 0
