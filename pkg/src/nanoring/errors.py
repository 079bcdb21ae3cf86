class NanoringError(Exception):
    """Base class for simulation failures."""


class NormDrift(NanoringError):
    """Sampled norm left [1 - tol, 1 + tol]; time step too large."""


class TruncationPressure(NanoringError):
    """Population reached the basis edge; m_max too small."""


class PumpFailed(NanoringError):
    """Pump pulse left the ring without a usable angular momentum."""


class EmptyWindow(NanoringError):
    pass


class WindowTooShort(NanoringError):
    pass


class BandOverlap(NanoringError):
    """Detection bands intersect for this ring/laser pairing."""


class MissingGate(NanoringError):
    """A circuit needs a gate that no configured truth-table column provides."""
