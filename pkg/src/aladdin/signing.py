"""Pluggable announcement signatures.

Corruption and forgery are different failure modes: frames carry a CRC for
the former, announcements an optional detached signature for the latter.
Any scheme producing a fixed 64-byte signature plugs in; the default is
Ed25519. Keys travel as raw 32-byte values, hex-encoded in fixtures.
"""

from __future__ import annotations

from typing import Protocol

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)

SIGNATURE_LEN = 64


class SignatureScheme(Protocol):
    def sign(self, private_key, message: bytes) -> bytes: ...

    def verify(self, public_key, message: bytes, signature: bytes) -> bool: ...


class Ed25519Scheme:
    """Default scheme: 64-byte Ed25519 signatures."""

    def sign(self, private_key: Ed25519PrivateKey, message: bytes) -> bytes:
        return private_key.sign(message)

    def verify(self, public_key: Ed25519PublicKey, message: bytes, signature: bytes) -> bool:
        try:
            public_key.verify(signature, message)
            return True
        except InvalidSignature:
            return False


DEFAULT_SCHEME = Ed25519Scheme()


def private_key_from_seed(seed: bytes) -> Ed25519PrivateKey:
    return Ed25519PrivateKey.from_private_bytes(seed)

def private_key_from_hex(text: str) -> Ed25519PrivateKey:
    return private_key_from_seed(bytes.fromhex(text.strip()))


def public_key_from_hex(text: str) -> Ed25519PublicKey:
    return Ed25519PublicKey.from_public_bytes(bytes.fromhex(text.strip()))


def public_key_hex(key: Ed25519PrivateKey) -> str:
    return key.public_key().public_bytes_raw().hex()
