"""Shared fixtures: one trace cache for the whole test session."""

import pytest

from unitroot.trace_store import TraceStore


@pytest.fixture(scope="session")
def store(tmp_path_factory) -> TraceStore:
    return TraceStore(tmp_path_factory.mktemp("traces"), compute_missing=True)
