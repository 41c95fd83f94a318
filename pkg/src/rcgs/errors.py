class RCGSError(Exception):
    """Base class for all errors raised by this package."""


class BitstreamExhausted(RCGSError, EOFError):
    pass


class ContainerError(RCGSError, ValueError):
    """A container failed validation while being parsed or decoded."""


class GroupingError(RCGSError):
    def __init__(self, n_super_letters: int, threshold: float):
        super().__init__(
            f"grouping produced {n_super_letters} super-letters (> 16) "
            f"at final threshold {threshold:.4f}"
        )
        self.n_super_letters = n_super_letters
        self.threshold = threshold
