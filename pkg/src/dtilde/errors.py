"""Error hierarchy shared by every module.

Each error carries a stable ``code`` so the CLI can emit machine-readable
failures without string matching on messages.
"""

from __future__ import annotations


class DtildeError(Exception):
    code = "Error"

    def __init__(self, message: str = "", **detail):
        super().__init__(message)
        self.detail = detail

    def to_json(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        if self.detail:
            out["detail"] = {k: _plain(v) for k, v in self.detail.items()}
        return out


def _plain(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def _make(name: str, *bases) -> type:
    return type(name, (DtildeError, *bases), {"code": name})


# quiver_core
LoopError = _make("LoopError")
TwoCycleError = _make("TwoCycleError")
DimensionMismatch = _make("DimensionMismatch")


class VertexIndexError(DtildeError, IndexError):
    code = "IndexError"


# rep_core
NotAcyclic = _make("NotAcyclic")
BadColor = _make("BadColor")
BadQuiver = _make("BadQuiver")
QuiverMismatch = _make("QuiverMismatch")
OracleDisagreement = _make("OracleDisagreement")
NotSink = _make("NotSink")
NotSource = _make("NotSource")
DiagramMismatch = _make("DiagramMismatch")
NotIndecomposable = _make("NotIndecomposable")

# surface_core
TooSmall = _make("TooSmall")
InvalidTriangulation = _make("InvalidTriangulation")
NotFlippable = _make("NotFlippable")
InconsistentWord = _make("InconsistentWord")
ForbiddenRight = _make("ForbiddenRight")
NotPunctureToPuncture = _make("NotPunctureToPuncture")
MixedTriangulation = _make("MixedTriangulation")
IsProjectiveEdge = _make("IsProjectiveEdge")

# equivalence
NotAdmissible = _make("NotAdmissible")
BadCoordinate = _make("BadCoordinate")
IsProjective = _make("IsProjective")

# cli
BadInput = _make("BadInput")
