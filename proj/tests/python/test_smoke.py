import math
import pathlib

import pytest

import pqnewton

DATA = pathlib.Path(__file__).resolve().parents[2] / "data" / "netlib"


def test_afiro_projection():
    a = pqnewton.read_matrix_market(str(DATA / "afiro.mtx"))
    assert (a.rows, a.cols, a.nnz) == (27, 51, 102)
    b = pqnewton.read_vector(str(DATA / "afiro_b.txt"))
    rec = pqnewton.project(a, b)
    assert rec["status"] == "converged"
    assert rec["residual_inf"] <= 1e-8
    assert math.isclose(rec["x_norm"], 634.029569, abs_tol=1e-3)
    assert min(rec["x"]) >= 0.0
    ax = a.matvec(rec["x"])
    assert max(abs(u - v) for u, v in zip(ax, b)) <= 1e-8


def test_config_overrides_and_errors():
    a = pqnewton.SparseMatrix.from_triplets(2, 3, [0, 0, 1], [0, 2, 1], [1.0, 1.0, 2.0])
    b = pqnewton.feasible_rhs(a, 3)
    rec = pqnewton.project(a, b, stop_rule="old", eps_cg=1e-2)
    assert rec["config"]["stop_rule"] == "old"
    assert rec["status"] == "converged"
    with pytest.raises(ValueError):
        pqnewton.project(a, b, not_a_setting=1)
    with pytest.raises(ValueError):
        pqnewton.project(a, [1.0], None)


def test_polyhedra_distance():
    rep = pqnewton.polyhedra_distance(64)
    assert rep["status"] == "converged"
    assert abs(rep["distance"] - 1.102286) <= 1e-3
    with pytest.raises(ValueError):
        pqnewton.polyhedra_distance(7)


def test_bad_matrix_file(tmp_path):
    bad = tmp_path / "bad.mtx"
    bad.write_text("not a matrix market file\n")
    with pytest.raises(ValueError):
        pqnewton.read_matrix_market(str(bad))
