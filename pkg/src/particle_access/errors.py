"""Exception hierarchy. Everything derives from ``ParticleAccessError``."""


class ParticleAccessError(ValueError):
    pass


class EmptyGroup(ParticleAccessError):
    pass


class InvalidParticle(ParticleAccessError):
    def __init__(self, message, particle_id=None, line=None):
        self.particle_id = particle_id
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidBandwidth(ParticleAccessError):
    pass


class BadIndex(ParticleAccessError, IndexError):
    pass


class NoTail(ParticleAccessError):
    """The inflection point is the last particle, so there is nothing after it."""


class TooLarge(ParticleAccessError):
    pass


class InvalidMutation(ParticleAccessError):
    pass


class BudgetTooTight(ParticleAccessError):
    pass


class NoCapacity(ParticleAccessError):
    pass


class InvalidFlowSpec(ParticleAccessError):
    pass


class InvalidInput(ParticleAccessError):
    pass


class ParseError(ParticleAccessError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
