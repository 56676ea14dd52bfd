"""Compiled kernels against the pure-Python reference, and the dispatcher's fallback."""

import os
import subprocess
import sys

import pytest
from hypothesis import assume, given, strategies as st

from monokit import _accel, _pykernels, reps
from monokit.rootsystem import build_root_system

ck = pytest.importorskip("monokit._ckernels", reason="compiled extension not built")

NAMES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4", "A1xG2"]


def freudenthal_args(rs, lam):
    depth = reps.dominant_weights_below(rs, lam)
    order = sorted(depth, key=lambda mu: (depth[mu], mu))
    roots, forms, norms, _ = reps._root_tables(rs)
    return lam, order, roots, forms, norms, rs.int_form, rs.simple_roots


@st.composite
def system_weight(draw, top=3):
    rs = build_root_system(draw(st.sampled_from(NAMES)))
    return rs, tuple(draw(st.integers(0, top)) for _ in range(rs.total_rank))


@given(system_weight())
def test_freudenthal_kernels_agree(data):
    rs, lam = data
    args = freudenthal_args(rs, lam)
    assert list(ck.freudenthal(*args)) == _pykernels.freudenthal(*args)


@given(system_weight(), system_weight())
def test_klimyk_kernels_agree(a, b):
    rs, lam = a
    mu = tuple(b[1][: rs.total_rank]) + (0,) * max(0, rs.total_rank - len(b[1]))
    assume(reps.weyl_dimension(rs, mu) <= 5000)
    weights, mults = reps._weight_list(rs, mu)
    assert ck.klimyk(lam, weights, mults, rs.simple_roots) == _pykernels.klimyk(lam, weights, mults, rs.simple_roots)


@given(system_weight(top=2), system_weight(top=2))
def test_convolution_kernels_agree(a, b):
    rs, lam = a
    mu = tuple(b[1][: rs.total_rank]) + (0,) * max(0, rs.total_rank - len(b[1]))
    assume(reps.weyl_dimension(rs, lam) * reps.weyl_dimension(rs, mu) <= 200000)
    top = tuple(x + y for x, y in zip(lam, mu))
    targets = list(reps.dominant_weights_below(rs, top))
    lw, lm = reps._weight_list(rs, lam)
    full_mu = reps._full_character(rs, mu)
    assert ck.convolve_dominant(targets, lw, lm, full_mu) == _pykernels.convolve_dominant(targets, lw, lm, full_mu)


def test_overflow_falls_back_to_python():
    rs = build_root_system("A2")
    huge = (2 ** 62, 2 ** 62)
    weights, mults = reps._weight_list(rs, (1, 0))
    with pytest.raises(OverflowError):
        ck.klimyk(huge, weights, mults, rs.simple_roots)
    expected = _pykernels.klimyk(huge, weights, mults, rs.simple_roots)
    assert _accel.klimyk(huge, weights, mults, rs.simple_roots) == expected
    assert sum(expected.values()) == 3


def test_large_module_exact():
    # multiplicities in the tens of thousands stay exact through the compiled path
    rs = build_root_system("F4")
    wm = reps.weight_multiplicities(rs, (2, 1, 1, 2))
    assert wm.total_mass() == reps.weyl_dimension(rs, (2, 1, 1, 2))


def test_pure_python_backend_selected_by_environment():
    code = "import monokit; print(monokit.BACKEND)"
    env = {"MONOKIT_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"}
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
    expected_here = "python" if os.environ.get("MONOKIT_PURE_PYTHON") else "compiled"
    assert _accel.BACKEND == expected_here
