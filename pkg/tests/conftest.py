import numpy as np
import pytest

from fluidmimo import FluidMimoConfig, OverallChannel, generate_channel


def make_channel(entries, m_r, m_t, n_r, n_t, snr_db=5.0, w=0.5):
    """Channel with hand-picked entries (for closed-form instances)."""
    cfg = FluidMimoConfig(m_r=m_r, m_t=m_t, n_r=n_r, n_t=n_t, snr_db=snr_db, w=w)
    return OverallChannel(cfg, np.asarray(entries, dtype=complex))


def random_instance(rng, m_max=2, n_max=4, snr_db=None, w=None):
    """One random config + channel drawn from a test-owned generator."""
    cfg = FluidMimoConfig(
        m_r=int(rng.integers(1, m_max + 1)),
        m_t=int(rng.integers(1, m_max + 1)),
        n_r=int(rng.integers(1, n_max + 1)),
        n_t=int(rng.integers(1, n_max + 1)),
        snr_db=float(rng.uniform(-5, 15)) if snr_db is None else snr_db,
        w=float(rng.uniform(0.0, 2.0)) if w is None else w,
    )
    return generate_channel(cfg, int(rng.integers(0, 2 ** 63)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240915)
