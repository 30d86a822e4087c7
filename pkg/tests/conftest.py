"""Shared pytest fixtures for sboxlab tests."""

import pytest

from sboxlab.chaos.chaos_core import EcmParams, State2D
from sboxlab.sbox.sbox import SBox
from sboxlab.sbox.tables import BuiltinSBox, builtin_sbox

REFERENCE_X0 = 0.414213562373095
REFERENCE_Y0 = 0.732050807568877
REFERENCE_GAMMA = 5.385164807134504
REFERENCE_K = 7


@pytest.fixture
def ecm_params():
    """The reference map parameters (gamma = sqrt(29), k = 7)."""
    return EcmParams(REFERENCE_GAMMA, REFERENCE_K)


@pytest.fixture
def ecm_seed():
    return State2D(REFERENCE_X0, REFERENCE_Y0)


@pytest.fixture
def aes_sbox():
    return builtin_sbox(BuiltinSBox.AES)


@pytest.fixture
def sm4_sbox():
    return builtin_sbox(BuiltinSBox.SM4)


@pytest.fixture
def ecm_strong_sbox():
    return builtin_sbox(BuiltinSBox.ECM_STRONG)


@pytest.fixture
def identity_sbox():
    return SBox.identity()


@pytest.fixture
def sample_ik():
    """A fixed 32-byte initial key."""
    return bytes.fromhex("3f8a1c92d47be05163a9f2c87e14b06d5c29e8f31a7d46b09e53c2f18a64d7e2")
