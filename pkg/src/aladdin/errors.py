"""Exception types shared across the package.

Everything raised deliberately by this package derives from AladdinError,
so callers (the CLI in particular) can distinguish our failures from bugs.
"""

from __future__ import annotations


class AladdinError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------- payloads


class PayloadSyntaxError(AladdinError):
    """Malformed line in the payload text format."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnsupportedTermError(AladdinError):
    """Term kind the payload grammar deliberately excludes (blank nodes)."""

    def __init__(self, line: int, message: str = "blank nodes are not supported"):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TooLargeError(AladdinError):
    """A count or length exceeds what the compact encoding can express."""


class TruncatedError(AladdinError):
    """Input ended before its declared length."""


class UnknownFormatVersionError(AladdinError):
    """Compact payload carries a format version this decoder does not know."""


class IndexOutOfRangeError(AladdinError):
    """Term or prefix index beyond the decoded table."""


class MalformedTermError(AladdinError):
    """Structurally intact encoding whose content cannot form a valid term.

    Covers invalid UTF-8, IRI character violations, bad language tags, and
    indices that resolve to a term of the wrong kind.
    """


# ---------------------------------------------------------------- framing


class BadMagicError(AladdinError):
    """Datagram does not start with the frame magic."""


class BadVersionError(AladdinError):
    """Frame wire-format version unknown."""


class ChecksumMismatchError(AladdinError):
    """Frame CRC does not match its contents."""


class MalformedFrameError(AladdinError):
    """CRC-valid frame whose header fields are mutually inconsistent."""


class TooManyFragmentsError(AladdinError):
    """Announcement body needs more fragments than the counter can address."""


class InconsistentFragCountError(AladdinError):
    """Fragment disagrees with its reassembly buffer about the fragment count."""


class AlreadySignedError(AladdinError):
    """Attempt to sign an announcement that already carries a signature."""


# ---------------------------------------------------------------- beacons


class ImmutableBeaconError(AladdinError):
    """Payload update directed at write-once hardware."""


class InvalidPayloadError(AladdinError):
    """Payload graph rejected by validation; carries the full report."""

    def __init__(self, report):
        detail = "; ".join(f"{code}: {msg}" for code, msg in report.violations)
        super().__init__(detail or "payload invalid")
        self.report = report


# ------------------------------------------------------- resolver / config


class ManifestError(AladdinError):
    """Document-store manifest is malformed or references missing files."""


class ConfigError(AladdinError):
    """Scenario configuration problem; names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
