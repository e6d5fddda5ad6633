"""Exception hierarchy shared by the library and the CLI."""


class SetoidError(Exception):
    """Base class for all library errors."""


class ConstructionError(SetoidError, ValueError):
    """A value could not be built from the given data (duplicates, bad arity, ...)."""


class EnumerationLimitError(SetoidError):
    """An enumeration would exceed the configured size cap."""

    def __init__(self, what, size, limit, partial=False):
        count = f"at least {size}" if partial else str(size)
        super().__init__(f"{what}: {count} exceeds enumeration limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class NonExtensionalError(SetoidError):
    """An operation that requires an extensional tree or map was given a non-extensional one."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotRelatedError(SetoidError):
    """Evidence of relatedness was required but the elements are not related."""


class IncoherentFamilyError(SetoidError):
    """A family of maps fails the coherence condition."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class InvalidWitnessError(SetoidError):
    """A witness tree does not validate against its signature."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class DepthError(SetoidError):
    """A tree is deeper than the truncation it is evaluated on."""


class NotAMorphismError(SetoidError):
    """A map that was required to be an algebra morphism is not one."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class ParseError(SetoidError, ValueError):
    """Input document does not match the schema; ``where`` is a JSON path."""

    def __init__(self, message, where="$"):
        super().__init__(f"{where}: {message}")
        self.where = where
