class ChirahedraError(Exception):
    pass


class DegenerateParams(ChirahedraError):
    """Parameters for which the generators do not define a polyhedron (e.g. (0, 0))."""


class NoClosure(ChirahedraError):
    """Breadth-first enumeration hit the word bound before closing."""


class Refuted(ChirahedraError):
    """A claimed fact failed its check.  ``witness`` says where."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedSource(ChirahedraError):
    pass


class NotAVertex(ChirahedraError):
    pass
