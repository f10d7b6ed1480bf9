"""Exception types raised by the toolkit."""


class GeostatError(Exception):
    """Base class for all toolkit errors."""


class OutOfDomain(GeostatError):
    """Evaluation requested outside a chart's valid region."""


class NonFinite(GeostatError):
    """A field evaluation produced NaN or Inf."""


class SingularMetric(GeostatError):
    """Metric component matrix not invertible (condition number > 1e12)."""


class DegenerateTangents(GeostatError):
    """Surface embedding tangents are linearly dependent."""


class NonPositiveLapse(GeostatError):
    """Lapse value <= 0 encountered where positivity is required."""


class InvalidSpec(GeostatError):
    """A solution specification violates its invariants."""


class PathThroughRod(GeostatError):
    """Metric-function integration path intersects a rod or strut tube."""


class RuleTooCoarse(GeostatError):
    """Quadrature refinement test failed at the requested tolerance."""


class ZeroMass(GeostatError):
    """Center-of-mass integral requested with vanishing total mass."""


class NonHarmonicChart(GeostatError):
    """Center-of-mass integral requested in a chart of unknown harmonicity."""


class NotStarShaped(GeostatError):
    """A ray from the star center crosses the level set more than once."""


class LevelNotFound(GeostatError):
    """No level-set crossing found within the search range."""


class ConstraintBlowup(GeostatError):
    """Constraint projection failed to converge."""


class NotTimelike(GeostatError):
    """Particle state violates the time-like condition."""


class ScenarioError(GeostatError):
    """Scenario file failed schema validation."""
