"""Exception hierarchy for qfeedback"""


class QFeedbackError(Exception):
    """Root of every error raised by qfeedback"""


# Linear algebra

class LinalgError(QFeedbackError):
    """Failure inside the dense linear algebra core"""


class NotHermitian(LinalgError, ValueError):
    """Matrix deviates from its conjugate transpose beyond tolerance"""


class NoConvergence(LinalgError, ArithmeticError):
    """An iterative routine hit its iteration limit"""


class DimensionMismatch(LinalgError, ValueError):
    """Operands have incompatible shapes"""


class NonFinite(LinalgError, ValueError):
    """NaN or infinite entries where finite numbers are required"""


# Quantum data model

class ModelError(QFeedbackError, ValueError):
    """A state, observable or measurement violates its invariants"""


class InvalidState(ModelError):
    """Not a density matrix (trace, hermiticity or positivity)"""


class InvalidEffect(ModelError):
    """POVM element with eigenvalues outside [0, 1]"""


class DuplicateLabel(ModelError):
    """Two POVM effects share an outcome label"""


class NotOrthonormal(ModelError):
    """Basis vectors are not mutually orthonormal"""


class Incomplete(ModelError):
    """Effects do not sum to the identity"""


class ZeroVector(ModelError):
    """A pure state was requested from the zero vector"""


# Feedback protocol and analysis

class ProtocolError(QFeedbackError):
    """Inconsistent inputs to the feedback protocol"""


class LabelMismatch(ProtocolError, ValueError):
    """Estimate labels differ from the POVM outcome labels"""


class ZeroProbability(ProtocolError, ValueError):
    """Conditional state requested for an outcome that never occurs"""


class InvalidEstimate(ProtocolError, ValueError):
    """Feedback estimate that is not a finite real number"""


class AnalysisError(QFeedbackError):
    """Preconditions of an uncertainty formula are not met"""


class NonzeroMean(AnalysisError, ValueError):
    """The variance model needs an observable with zero expectation"""


class NotProjective(AnalysisError, ValueError):
    """The POVM is not a complete set of rank-1 projectors"""


class NotPure(AnalysisError, ValueError):
    """The state is mixed where a pure state is required"""


class NumericalInconsistency(QFeedbackError, ArithmeticError):
    """Two evaluations that must agree do not"""


# Scenario documents

class ScenarioError(QFeedbackError):
    """Problem with a scenario document"""


class ParseError(ScenarioError, ValueError):
    """The document is malformed or does not follow the schema"""


class ValidationError(ScenarioError, ValueError):
    """The document is well-formed but describes an invalid scenario"""
