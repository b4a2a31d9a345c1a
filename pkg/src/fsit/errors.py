"""Exception hierarchy shared by all fsit modules."""


class FsitError(Exception):
    """Base class for every error raised by this package."""


# -- scene validation ------------------------------------------------------

class InvalidScene(FsitError):
    """A scene observation violates the data-model invariants."""


class UnknownSymbol(InvalidScene):
    """A type or relation name is not declared by the input interface."""


class DanglingFactEndpoint(InvalidScene):
    """A fact references an element id that is not part of the scene."""


class DegreeOutOfRange(InvalidScene):
    """A fuzzy degree falls outside [0, 1], or an element has none above 0."""


class DuplicateFact(InvalidScene):
    """Two facts share the same (subject, object, relation) triple."""


# -- fuzzy arithmetic ------------------------------------------------------

class NegativeCardinality(FsitError):
    """A sigma-count cardinality below zero was supplied."""


class EmptyInput(FsitError):
    """A conjunction over zero degrees is undefined."""


class FuzzinessMismatch(FsitError):
    """Restrictions or categories with different fuzziness values were mixed."""


# -- engine ----------------------------------------------------------------

class InterfaceMismatch(FsitError):
    """A value built over one input interface was used with another."""


class EmptyBeliefs(FsitError):
    """Learning requires at least one belief with positive cardinality."""


class DuplicateCategory(FsitError):
    """A category id is already present in the memory graph."""


class ZeroSceneEnergy(FsitError):
    """Similarity is undefined for a scene with no belief energy."""


# -- grounding -------------------------------------------------------------

class CoincidentPositions(FsitError):
    """Directional kernels are undefined for two objects at the same point."""


# -- persistence -----------------------------------------------------------

class PersistenceError(FsitError):
    """Base class for document load/save failures."""


class ParseError(PersistenceError):
    """The document is not well-formed (message names the offset)."""


class SchemaVersionMismatch(PersistenceError):
    """The document declares a schema version this build does not read."""


class ValidationError(PersistenceError):
    """The document parsed but a field is missing or has the wrong shape."""
