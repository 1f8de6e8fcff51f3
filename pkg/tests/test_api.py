import pytest

from app.backend import create_app
from app.backend.errors import CatalogError
from app.backend.middleware import clear_cache, get_route_metrics, reset_metrics
from app.backend.version import __version__

RIGHT_TREFOIL = 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'


def test_health(client):
    """Test the health endpoint reports the catalog."""
    response = client.get('/api/health/')
    assert response.status_code == 200
    assert response.json['status'] == 'ok'
    assert response.json['catalog']['knots'] == 7
    assert 'cpu_count' in response.json['system']
    assert response.json['application']['version'] == __version__


def test_metrics(client):
    """Test route and computation timings are exposed."""
    client.get('/api/knots/trefoil/jones')
    response = client.get('/api/health/metrics')
    assert response.status_code == 200
    names = [entry['route'] for entry in response.json['routes']]
    assert 'computation:jones' in names
    assert 'memory_rss' in response.json['process']


def test_list_knots(client):
    response = client.get('/api/knots/')
    assert response.status_code == 200
    names = [k['name'] for k in response.json['knots']]
    assert 'conway' in names and 'kt' in names


def test_describe_knot(client):
    response = client.get('/api/knots/4_1')
    assert response.status_code == 200
    assert response.json['name'] == 'figure-eight'
    assert response.json['reference']['determinant'] == 5


def test_jones_route(client):
    response = client.get('/api/knots/trefoil/jones')
    assert response.status_code == 200
    assert response.json['knot'] == 'right-trefoil'
    assert response.json['jones'] == '-t^4 + t^3 + t'
    assert 'X-Computation-Time' in response.headers


def test_khovanov_route(client):
    response = client.get('/api/knots/trefoil/khovanov?field=F2')
    assert response.status_code == 200
    assert response.json['field'] == 'F2'
    assert [3, 7, 1] in response.json['ranks']


def test_report_route(client):
    response = client.get('/api/knots/figure-eight/report?compute_s=false')
    assert response.status_code == 200
    assert response.json['verdict'] == 'NotSlice'
    assert response.json['s'] is None


def test_colorings_route(client):
    response = client.get('/api/knots/4_1/colorings?p=5')
    assert response.json['colorings'] == 25


def test_evaluate_pd(client):
    response = client.post('/api/knots/evaluate', json={'pd': RIGHT_TREFOIL, 'invariants': ['alexander', 's']})
    assert response.status_code == 200
    assert response.json['alexander']['determinant'] == 3
    assert response.json['s']['s'] == 2


def test_transfer_route(client):
    certificate = {'knot_a': 'unknot', 'knot_b': 'right-trefoil', 'provenance': 'fixture', 'trusted': True}
    response = client.post('/api/knots/transfer', json={'certificate': certificate, 'compute_s': False})
    assert response.status_code == 200
    unknot, trefoil = response.json['reports']
    assert unknot['verdict'] == 'NotSlice'
    assert unknot['obstructions'][0]['id'] == 'trace-transfer'
    assert trefoil['verdict'] == 'NotSlice'


def test_404_error(client):
    """Test 404 error handling."""
    response = client.get('/api/nonexistent')
    assert response.status_code == 404
    assert 'error' in response.json
    assert 'message' in response.json


def test_unknown_knot(client):
    response = client.get('/api/knots/5_2')
    assert response.status_code == 404
    assert response.json['error'] == 'KnotNotFoundError'
    assert response.json['context']['name'] == '5_2'


def test_unknown_invariant(client):
    response = client.get('/api/knots/trefoil/hfk')
    assert response.status_code == 422
    assert response.json['error'] == 'InvalidOperationError'


@pytest.mark.parametrize('body', [None, {}, {'pd': ''}, {'pd': 'X[1,2,3]'}])
def test_evaluate_bad_pd(client, body):
    """Test missing or malformed PD text is a client error."""
    response = client.post('/api/knots/evaluate', json=body)
    assert response.status_code == 400
    assert 'message' in response.json


def test_evaluate_link(client):
    response = client.post('/api/knots/evaluate', json={'pd': 'X[4,1,3,2] X[2,3,1,4]', 'invariants': ['jones']})
    assert response.status_code == 422
    assert response.json['context']['components'] == 2


def test_untrusted_certificate(client):
    certificate = {'knot_a': 'unknot', 'knot_b': 'right-trefoil', 'provenance': 'fixture'}
    response = client.post('/api/knots/transfer', json={'certificate': certificate, 'compute_s': False})
    assert response.status_code == 403


def test_method_not_allowed(client):
    response = client.delete('/api/knots/')
    assert response.status_code == 405


def test_size_limit_is_413():
    app = create_app({'TESTING': True, 'CACHE_TTL': 0, 'KH_SIZE_LIMIT': 1})
    response = app.test_client().get('/api/knots/figure-eight/khovanov')
    assert response.status_code == 413
    assert response.json['error'] == 'SizeLimitExceeded'


def test_responses_are_cached():
    """Test a repeated invariant request is served without recomputing."""
    app = create_app({'TESTING': True, 'CACHE_TTL': 60})
    client = app.test_client()
    clear_cache()
    reset_metrics()
    try:
        first = client.get('/api/knots/trefoil/jones')
        second = client.get('/api/knots/trefoil/jones')
        assert first.json == second.json
        assert 'X-Computation-Time' in first.headers
        assert 'X-Computation-Time' not in second.headers
        assert get_route_metrics('computation:jones')['count'] == 1
    finally:
        clear_cache()
        reset_metrics()


def test_health_degraded(client, mocker):
    """Test a broken catalog is reported instead of failing the health check."""
    mocker.patch('app.backend.routes.health.load_catalog', side_effect=CatalogError('catalog.yaml is unreadable'))
    response = client.get('/api/health/')
    assert response.status_code == 200
    assert response.json['status'] == 'degraded'
    assert response.json['catalog']['error'] == 'catalog.yaml is unreadable'
