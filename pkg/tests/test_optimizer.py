import numpy as np
import pytest

from swiptcoop.optimizer import minimize_sop
from swiptcoop.params import ValidationError


def test_single_point_grid(defaults):
    res = minimize_sop("isanc", defaults, k_grid=[2.5], backend="efrc")
    assert res.best_alloc == {"k": 2.5}
    assert len(res.surface) == 1


def test_best_is_minimum_of_surface(defaults):
    res = minimize_sop("isanc", defaults,
                       k_grid=np.arange(1.1, 4.01, 0.1), backend="analytic")
    assert all(res.best_sop <= point["sop"] for point in res.surface)
    assert {"sop", "op_N", "op_F", "k"} <= set(res.surface[0])


def test_refining_grid_never_increases_minimum(defaults):
    coarse = minimize_sop("isanc", defaults,
                          k_grid=np.arange(1.2, 4.01, 0.4), backend="efrc")
    fine = minimize_sop("isanc", defaults,
                        k_grid=np.arange(1.2, 4.01, 0.1), backend="efrc")
    assert fine.best_sop <= coarse.best_sop


def test_invalid_k_values_filtered(defaults):
    # entries at or below 2^R - 1 are dropped, the rest searched
    res = minimize_sop("isanc", defaults, k_grid=[0.5, 1.0, 2.0, 3.0], backend="efrc")
    assert [point["k"] for point in res.surface] == [2.0, 3.0]
    assert res.best_alloc == {"k": 2.0}


def test_empty_valid_grid_raises(defaults):
    with pytest.raises(ValidationError):
        minimize_sop("isanc", defaults, k_grid=[0.2, 0.9, 1.0], backend="efrc")
    with pytest.raises(ValidationError):
        minimize_sop("isaoc", defaults, rho_grid=[0.0, 1.0], theta_grid=[0.5],
                     backend="efrc")


def test_missing_grids_raise(defaults):
    with pytest.raises(ValidationError):
        minimize_sop("isanc", defaults, backend="efrc")
    with pytest.raises(ValidationError):
        minimize_sop("isaoc", defaults, rho_grid=[0.5], backend="efrc")
    with pytest.raises(ValidationError):
        minimize_sop("isanc", defaults, k_grid=[2.0], backend="exhaustive")


def test_tie_breaks_toward_smaller_allocation(defaults):
    # constant surface: every point ties, the smallest wins
    flat = minimize_sop("isaoc", defaults, rho_grid=[0.5], theta_grid=[0.3, 0.7],
                        backend="efrc")
    # f(theta) symmetry makes 0.3 and 0.7 exact ties at rho = 0.5
    assert flat.surface[0]["sop"] == flat.surface[1]["sop"]
    assert flat.best_alloc["theta"] == 0.3


def test_isanc_never_worse_than_csanc_on_shared_grid(defaults):
    ks = np.arange(1.2, 4.01, 0.2)
    isanc = minimize_sop("isanc", defaults, k_grid=ks, backend="analytic")
    csanc = minimize_sop("csanc", defaults, k_grid=ks, backend="analytic")
    for a, b in zip(isanc.surface, csanc.surface):
        assert a["sop"] <= b["sop"] * (1.0 + 1e-12)
    assert isanc.best_sop <= csanc.best_sop


def test_isaoc_cartesian_surface(defaults):
    rhos = [0.4, 0.5, 0.6]
    thetas = [0.4, 0.5, 0.6]
    res = minimize_sop("isaoc", defaults, rho_grid=rhos, theta_grid=thetas,
                       backend="analytic")
    assert len(res.surface) == 9
    assert res.best_alloc["rho"] in rhos and res.best_alloc["theta"] in thetas
