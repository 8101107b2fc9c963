"""Exception hierarchy.

Domain errors derive from :class:`CStarError`; the CLI maps them to exit
status 1.  :class:`ParseError` signals malformed input (exit status 2).
"""


class CStarError(Exception):
    """Base class for all domain errors."""

    code = "domain_error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class ParseError(Exception):
    """Input could not be parsed against the expected schema."""


def _make(name, code, doc):
    return type(name, (CStarError,), {"code": code, "__doc__": doc})


NotASurface = _make("NotASurface", "not_a_surface", "Sequence does not define a smooth complete fan.")
PreconditionViolated = _make("PreconditionViolated", "precondition_violated", "An operation precondition failed.")
NotContractible = _make("NotContractible", "not_contractible", "Divisor is not a (-1)-curve.")
InternalInconsistency = _make(
    "InternalInconsistency", "internal_inconsistency", "A proven invariant failed; indicates a bug."
)
NotToric = _make("NotToric", "not_toric", "Surface is not toric.")
NotSmooth = _make("NotSmooth", "not_smooth", "Multidivisor is not smooth.")
InvalidDiagram = _make("InvalidDiagram", "invalid_diagram", "Degeneration diagram is invalid.")
NotMinusOne = _make("NotMinusOne", "not_minus_one", "Divisor is not an invariant (-1)-curve.")
BothEndpointsHighDegree = _make(
    "BothEndpointsHighDegree", "both_endpoints_high_degree", "Edge of a (-1)-curve has no degree-one endpoint."
)
NotSmoothAfterBlowup = _make("NotSmoothAfterBlowup", "not_smooth_after_blowup", "Blowup move leaves a singular surface.")
AmbiguousEdge = _make("AmbiguousEdge", "ambiguous_edge", "No unique edge partner for an inserted vertex.")
UnknownDivisor = _make("UnknownDivisor", "unknown_divisor", "Divisor is not an invariant prime divisor of the surface.")
NotAToricSystem = _make("NotAToricSystem", "not_a_toric_system", "Sequence of classes violates the toric system axioms.")
RankMismatch = _make("RankMismatch", "rank_mismatch", "Surfaces have different Picard rank.")
RankTooSmall = _make("RankTooSmall", "rank_too_small", "Picard rank two admits a parity obstruction.")
NotCatalogForm = _make("NotCatalogForm", "not_catalog_form", "System is not a Hirzebruch catalog system.")
NotTame = _make("NotTame", "not_tame", "No tameness certificate exists.")
IllegalBlowup = _make("IllegalBlowup", "illegal_blowup", "Blowup does not apply to the surface of the system.")
