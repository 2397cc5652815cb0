"""Factorized spin channel vs direct summation, plus structural guarantees."""

import numpy as np
import pytest

from boostlab.channel import (
    ChannelBuilder,
    apply_one_sided,
    boost_spin_state,
    boost_spin_state_direct,
    transfer_operator,
)
from boostlab.errors import ConfigError, NumericalError
from boostlab.momentum import ModelKind, build_grid, make_model, normalize
from boostlab.scenarios import preset
from boostlab.spin import bell_state
from boostlab.kinematics import wigner_unitary


def _small_model(kind_name: str, nodes: int = 7):
    config = preset(kind_name)
    model = config.model()
    grid = build_grid(model, nodes, config.truncation)
    normalize(model, grid)
    return model, grid


def test_identity_at_zero_rapidity():
    model, grid = _small_model("axis-0", nodes=5)
    rho0 = bell_state("phi+")
    out = boost_spin_state(model, rho0, 0.0, grid)
    assert np.abs(out - rho0).max() < 1e-14


def test_output_is_valid_state():
    model, grid = _small_model("fsigma-rii", nodes=9)
    rng = np.random.default_rng(41)
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho0 = z @ z.conj().T
    rho0 /= np.trace(rho0).real
    out = boost_spin_state(model, rho0, 3.0, grid)
    assert np.abs(out - out.conj().T).max() < 1e-14
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(out).min() >= 0.0


def test_raw_channel_trace_preserving():
    model, grid = _small_model("ent-rii", nodes=7)
    builder = ChannelBuilder(model, grid)
    rho0 = bell_state("phi+")
    for xi in (0.0, 1.5, 5.0):
        raw = builder.channel(xi).apply(rho0)
        assert np.trace(raw).real == pytest.approx(1.0, abs=1e-12)


def test_narrow_lobes_act_as_unitary_conjugation():
    # sigma = 0.05: the packet is almost a momentum eigenstate, so the channel
    # approaches conjugation by U(p0) (x) U(q0)
    p0, q0 = (3.0, 0.0, -4.0), (2.0, 1.0, 0.0)
    model = make_model(ModelKind.AXIS_CENTERED, [p0], [q0], 0.05)
    grid = build_grid(model, 21, 5.0)
    normalize(model, grid)
    rho0 = bell_state("phi+")
    out = boost_spin_state(model, rho0, 1.3, grid)
    pair = np.kron(wigner_unitary(1.3, np.array(p0)), wigner_unitary(1.3, np.array(q0)))
    ref = pair @ rho0 @ pair.conj().T
    assert np.abs(out - ref).max() < 1e-3


@pytest.mark.parametrize(
    "name", ["eprb", "axis-0", "fsigma-rii", "fcross-large", "ent-rii"]
)
def test_factorized_matches_direct(name):
    model, grid = _small_model(name, nodes=7)
    rho0 = bell_state("phi+")
    a = boost_spin_state(model, rho0, 3.25, grid)
    b = boost_spin_state_direct(model, rho0, 3.25, grid)
    assert np.abs(a - b).max() < 1e-10


def test_direct_summation_guard():
    model, grid = _small_model("axis-0", nodes=41)
    with pytest.raises(ConfigError):
        boost_spin_state_direct(model, bell_state("phi+"), 1.0, grid)


def test_builder_requires_normalization():
    config = preset("axis-0")
    model = config.model()
    grid = build_grid(model, 5, config.truncation)
    with pytest.raises(ConfigError):
        ChannelBuilder(model, grid)


def test_builder_memoizes_channels():
    model, grid = _small_model("axis-0", nodes=5)
    builder = ChannelBuilder(model, grid)
    assert builder.channel(1.0) is builder.channel(1.0)
    assert builder.channel(1.0) is not builder.channel(2.0)


def test_trace_drift_raises_with_rapidity_in_message():
    model, grid = _small_model("axis-0", nodes=7)
    model.normalization *= 1.5  # simulate a badly normalized model
    with pytest.raises(NumericalError, match="xi=2.5"):
        boost_spin_state(model, bell_state("phi+"), 2.5, grid)


def test_transfer_operator_unital_trace_scaling():
    # K_kl applied to the identity integrates U U^dag = 1, giving weight * 1
    model, grid = _small_model("ent-rii", nodes=7)
    for pair in ((0, 0), (0, 1), (1, 1)):
        op = transfer_operator(model, grid.particle1, 1, pair, 2.0)
        out = op.apply(np.eye(2))
        assert np.abs(out - op.weight * np.eye(2)).max() < 1e-12 * max(1.0, abs(op.weight))


def test_one_sided_application_composes_to_full_channel():
    # single-term model: the two-qubit channel is the composition of the two
    # per-particle transfer operators, scaled by 1/N
    model, grid = _small_model("fsigma-rii", nodes=7)
    builder = ChannelBuilder(model, grid)
    channel = builder.channel(1.7)
    assert len(channel.terms) == 1
    coeff, k1, k2 = channel.terms[0]
    rho0 = bell_state("phi+")
    staged = coeff * apply_one_sided(k2, apply_one_sided(k1, rho0, 1), 2)
    assert np.abs(staged - channel.apply(rho0)).max() < 1e-13
