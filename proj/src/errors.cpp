#include "tdl/errors.hpp"

namespace tdl {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::LoopEdge: return "LoopEdge";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NonpositiveLength: return "NonpositiveLength";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::NoEdges: return "NoEdges";
    case Errc::UnknownId: return "UnknownId";
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::NonpositiveFactor: return "NonpositiveFactor";
    case Errc::UnsafeEpsilon: return "UnsafeEpsilon";
    case Errc::NotConnected: return "NotConnected";
    case Errc::NotBoundary: return "NotBoundary";
    case Errc::NotEffective: return "NotEffective";
    case Errc::NotSaturated: return "NotSaturated";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::EmptySystem: return "EmptySystem";
    case Errc::InvalidVertexSet: return "InvalidVertexSet";
    case Errc::EmptySet: return "EmptySet";
    case Errc::NotUnitGraph: return "NotUnitGraph";
    case Errc::NotVertexSupported: return "NotVertexSupported";
    case Errc::EmptyRegion: return "EmptyRegion";
    case Errc::InvalidWitness: return "InvalidWitness";
    case Errc::NotRds: return "NotRds";
    case Errc::NotSpanningTree: return "NotSpanningTree";
    case Errc::ParseError: return "ParseError";
    case Errc::InternalGeometry: return "InternalGeometry";
    case Errc::IterationCapExceeded: return "IterationCapExceeded";
    case Errc::SearchCapExceeded: return "SearchCapExceeded";
  }
  return "Unknown";
}

bool is_internal_defect(Errc code) noexcept {
  return code == Errc::InternalGeometry || code == Errc::IterationCapExceeded ||
         code == Errc::SearchCapExceeded;
}

}  // namespace tdl
