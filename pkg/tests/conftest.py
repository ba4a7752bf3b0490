from __future__ import annotations

import pytest

from convfec.trellis import DEFAULT_SPEC, CodeSpec, build_trellis


@pytest.fixture(scope="session")
def default_trellis():
    return build_trellis(DEFAULT_SPEC)


@pytest.fixture(scope="session")
def k3_spec():
    return CodeSpec.from_octal("7,5", constraint_length=3, frame_stages=5)


@pytest.fixture(scope="session")
def k3_trellis(k3_spec):
    return build_trellis(k3_spec)
