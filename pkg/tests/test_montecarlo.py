"""Exit-time Monte Carlo: determinism, backend agreement, sanity limits."""

import math
import os

import numpy as np
import pytest

from conewalks import montecarlo as mc
from conewalks.continuum import QUADRANT, Wedge


class TestBasics:
    def test_short_horizon_survives(self):
        r = mc.mc_survival(QUADRANT, (1.0, math.pi / 4), t=0.01, paths=2000, dt=1e-4, seed=1)
        assert r.estimate > 0.97

    def test_determinism(self):
        a = mc.mc_survival(QUADRANT, (1.0, 0.7), t=0.2, paths=5000, dt=1e-3, seed=7)
        b = mc.mc_survival(QUADRANT, (1.0, 0.7), t=0.2, paths=5000, dt=1e-3, seed=7)
        assert a.estimate == b.estimate

    def test_seed_changes_estimate(self):
        a = mc.mc_survival(QUADRANT, (1.0, 0.7), t=0.2, paths=5000, dt=1e-3, seed=7)
        b = mc.mc_survival(QUADRANT, (1.0, 0.7), t=0.2, paths=5000, dt=1e-3, seed=8)
        assert a.estimate != b.estimate

    def test_rejects_outside_start(self):
        with pytest.raises(ValueError):
            mc.mc_survival(QUADRANT, (1.0, 2.0), t=1.0, paths=100, dt=1e-3)

    def test_rejects_reflex_wedge(self):
        with pytest.raises(ValueError, match="convex"):
            mc.mc_survival(Wedge(4.0), (1.0, 1.0), t=1.0, paths=100, dt=1e-3)


class TestBackends:
    def test_kernels_agree_elementwise(self):
        rng = np.random.default_rng(5)
        bpaths, steps = 300, 40
        pos = np.full((bpaths, 2), 0.8)
        alive = np.ones(bpaths, dtype=np.bool_)
        normals = rng.normal(0.0, math.sqrt(1e-3), size=(steps, bpaths, 2))
        uniforms = rng.random(size=(steps, bpaths, 2))
        args = (math.sin(QUADRANT.xi), math.cos(QUADRANT.xi), False, 1e-3)

        p1, a1 = mc.step_block_numpy(
            pos.copy(), alive.copy(), normals, uniforms, *args
        )
        kern = mc._get_numba_kernel()
        p2, a2 = kern(pos.copy(), alive.copy(), normals, uniforms, *args)
        assert np.array_equal(a1, a2)
        assert np.array_equal(p1, p2)

    def test_env_flag_selects_numpy(self, monkeypatch):
        monkeypatch.setenv("CONEWALKS_NO_NUMBA", "1")
        r = mc.mc_survival(QUADRANT, (1.0, 0.7), t=0.05, paths=1000, dt=1e-3, seed=3)
        assert r.backend == "numpy"
        monkeypatch.delenv("CONEWALKS_NO_NUMBA")
        r2 = mc.mc_survival(QUADRANT, (1.0, 0.7), t=0.05, paths=1000, dt=1e-3, seed=3)
        assert r2.estimate == r.estimate


class TestAgainstOracles:
    def test_half_plane_reflection(self):
        # small, fast version of the acceptance check
        r = mc.mc_survival(Wedge(math.pi), (1.0, math.pi / 2), t=1.0, paths=20000, dt=1e-3, seed=11)
        target = math.erf(1.0 / math.sqrt(2.0))
        assert abs(r.estimate - target) < 4.0 * r.stderr

    def test_quadrant_product_law(self):
        # coordinates decouple: survival = erf(x0/sqrt(2t)) * erf(y0/sqrt(2t))
        r = mc.mc_survival(
            QUADRANT, (math.sqrt(2.0), math.pi / 4), t=1.0, paths=20000, dt=1e-3, seed=12
        )
        target = math.erf(1.0 / math.sqrt(2.0)) ** 2
        assert abs(r.estimate - target) < 4.0 * r.stderr
