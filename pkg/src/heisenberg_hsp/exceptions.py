"""
Exceptions raised by the simulator, the recovery driver and the experiment runner.

Argument errors derive from ValueError, runtime failures of the sampling
pipeline from RuntimeError. All of them share HspError so callers can catch
the whole family at once.
"""


class HspError(Exception):
    """Base class of every error raised by heisenberg_hsp."""


class ZeroInverse(HspError, ValueError):
    pass


class InconsistentSystem(HspError, ValueError):
    pass


class ParamsMismatch(HspError, ValueError):
    pass


class EvenCharacteristic(HspError, ValueError):
    pass


class NotIsotropic(HspError, ValueError):
    pass


class ZeroAlpha(HspError, ValueError):
    pass


class ZeroLabel(HspError, ValueError):
    pass


class TooLarge(HspError, ValueError):
    pass


class ConfigInvalid(HspError, ValueError):
    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class BackendCapExceeded(HspError, ValueError):
    pass


class InsufficientSamples(HspError, RuntimeError):
    pass


class SampleBudgetExceeded(HspError, RuntimeError):
    pass


class VerificationFailed(HspError, RuntimeError):
    pass
