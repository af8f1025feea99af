import pytest
from httpx import ASGITransport, AsyncClient

from app.main import app


@pytest.fixture
async def client():
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as client:
        yield client


async def test_health(client):
    response = await client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


async def test_lis_bounds(client):
    response = await client.post(
        "/api/v1/bounds", json={"policy": "lis", "b": 2, "r": "1/10", "h": 2, "d": 3}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["delay_bound"] == "47/5"
    assert body["queue_bound"] == "147/50"
    assert body["queue_packets"] == 2
    assert body["k_sequence"] is None


async def test_sis_bounds(client):
    response = await client.post(
        "/api/v1/bounds", json={"policy": "SIS", "b": 1, "r": "1/4", "h": 2, "d": 2}
    )
    body = response.json()
    assert body["k_sequence"] == ["1", "4"]
    assert body["delay_bound"] == "28"


@pytest.mark.parametrize("r", ["1/2", "1/0", "abc"])
async def test_sis_bounds_outside_domain(client, r):
    response = await client.post(
        "/api/v1/bounds", json={"policy": "sis", "b": 1, "r": r, "h": 2, "d": 2}
    )
    assert response.status_code == 400


async def test_verify_transmitter(client):
    response = await client.post("/api/v1/transmitters/verify", json={"rows": ["110", "011"]})
    body = response.json()
    assert body["ok"]
    assert body["node_count"] == 2 and body["length"] == 3
    assert body["witnesses"] == {"0": 0, "1": 2}

    response = await client.post("/api/v1/transmitters/verify", json={"rows": ["11", "11"]})
    assert response.json()["failing_row"] == 0


async def test_verify_transmitter_bad_rows(client):
    response = await client.post("/api/v1/transmitters/verify", json={"rows": ["10", "2"]})
    assert response.status_code == 422


async def test_run_scenario(client, scenarios_dir):
    document = (scenarios_dir / "tie-blocking.yaml").read_text()
    response = await client.post("/api/v1/scenarios/run", json={"document": document, "horizon": 100})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"]
    assert body["verdicts"]["observed"] == "blocked"


async def test_run_rejects_wireline(client, scenarios_dir):
    document = (scenarios_dir / "wireline-path.yaml").read_text()
    response = await client.post("/api/v1/scenarios/run", json={"document": document})
    assert response.status_code == 422


async def test_run_rejects_bad_walk(client, scenarios_dir):
    document = (scenarios_dir / "lis-proactive-bounds.yaml").read_text().replace(
        "max_hops: 4", "paths: [[0, 2]]"
    )
    response = await client.post("/api/v1/scenarios/run", json={"document": document})
    assert response.status_code == 400


async def test_transform(client, scenarios_dir):
    document = (scenarios_dir / "wireline-path.yaml").read_text()
    response = await client.post("/api/v1/scenarios/transform", json={"document": document})
    assert response.status_code == 200
    body = response.json()
    assert "kind: radio" in body["scenario"]
    assert body["manifest"]["source"] == "wireline-path"
