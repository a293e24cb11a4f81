"""Exception types shared across the library.

Validators report violations as data (lists of strings); exceptions are for
malformed inputs, cap overruns and broken constructions.
"""


class PcrossError(Exception):
    pass


class SizeCapExceeded(PcrossError):
    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


# group construction
class NotAssociative(PcrossError):
    pass


class NoIdentity(PcrossError):
    pass


class NoInverse(PcrossError):
    pass


class NotAPermutationRow(PcrossError):
    pass


# rings and ideals
class NotIdempotent(PcrossError):
    pass


# abelian groups
class NotASubgroup(PcrossError):
    pass


# cochains
class InvalidCochain(PcrossError):
    pass


class NotACocycle(PcrossError):
    pass


# partial representations and subbimodules
class InvalidRep(PcrossError):
    pass


class NotASubbimodule(PcrossError):
    pass


class NoDecomposition(PcrossError):
    pass


# graded rings / crossed products
class AssociativityFailure(PcrossError):
    def __init__(self, witness, message="associativity fails"):
        self.witness = witness
        super().__init__(f"{message}: witness {witness}")


class UnityFailure(PcrossError):
    def __init__(self, witness, message="embedded unity fails"):
        self.witness = witness
        super().__init__(f"{message}: witness {witness}")


class NotBilinear(PcrossError):
    pass


class NotBijective(PcrossError):
    pass


class NotAnIsoFamily(PcrossError):
    pass


class InvalidWitness(PcrossError):
    pass


class DegenerateAction(UserWarning):
    """Warning: a restricted action came out with an all-trivial ideal family."""


# CLI / instance files
class SchemaError(PcrossError):
    pass


class SemanticError(PcrossError):
    pass


class IoError(PcrossError):
    pass
