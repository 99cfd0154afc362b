"""Exception hierarchy.

Every error carries its witnesses as attributes so reports can name them.
The CLI maps the three top-level families onto exit codes: ValidationError
and ConfigError exit with 2, BudgetError with 3.
"""


class CohomlimError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CohomlimError):
    def __init__(self, *witness, detail=""):
        self.witness = witness
        name = type(self).__name__
        msg = f"{name}{witness!r}" if witness else name
        if detail:
            msg = f"{msg}: {detail}"
        super().__init__(msg)


# group-core
class NotAssociative(ValidationError): pass
class NoIdentity(ValidationError): pass
class NoInverse(ValidationError): pass
class NotNormal(ValidationError): pass
class NotHomomorphism(ValidationError): pass
class NotSubgroup(ValidationError): pass
class NotAbelian(ValidationError): pass

# g-actions
class IdentityAxiom(ValidationError): pass
class CompositionAxiom(ValidationError): pass
class AutomorphismAxiom(ValidationError): pass
class NotPreserved(ValidationError): pass

# cocycles and torsors
class NotGenerating(ValidationError): pass
class NotEquivariant(ValidationError): pass
class NotCocycle(ValidationError): pass
class NotTorsor(ValidationError): pass
class ActionMismatch(ValidationError): pass
class NotWellDefined(ValidationError): pass

# inverse systems and filtrations
class NotFunctorial(ValidationError): pass
class NotDirected(ValidationError): pass
class NotPoset(ValidationError): pass
class NotCharacteristic(ValidationError): pass
class NotNested(ValidationError): pass
class NotSolvable(ValidationError): pass


class BudgetError(CohomlimError):
    pass


class SizeLimit(BudgetError):
    def __init__(self, order, cap):
        self.order = order
        self.cap = cap
        super().__init__(f"SizeLimit: order {order} exceeds cap {cap}")


class BudgetExceeded(BudgetError):
    def __init__(self, estimate, budget):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"BudgetExceeded: {estimate} candidates exceeds budget {budget}"
        )


class ConfigError(CohomlimError):
    pass


class ParseError(ConfigError):
    def __init__(self, line, detail=""):
        self.line = line
        super().__init__(f"ParseError(line {line}): {detail}")


class UnknownReference(ConfigError):
    def __init__(self, name, kind=""):
        self.name = name
        self.kind = kind
        super().__init__(f"UnknownReference: {kind} {name!r}".replace("  ", " "))
