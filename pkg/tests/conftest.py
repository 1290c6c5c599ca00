import pytest

from app.lattice import Basis, prepare_instance


@pytest.fixture
def small_basis() -> Basis:
    return Basis.from_rows([[2, 0], [1, 1]])


@pytest.fixture
def identity2() -> Basis:
    return Basis.from_rows([[1, 0], [0, 1]])


@pytest.fixture
def qary6() -> Basis:
    """秩 6 的 q-ary 子格，d = 16"""
    return prepare_instance(16, 8, 65537, 6, seed=3)


@pytest.fixture
def tmp_out(tmp_path, monkeypatch):
    monkeypatch.setenv("SVP_VQE_JOBS", "1")
    return tmp_path
