#pragma once

#include <stdexcept>
#include <string>

namespace tdl {

enum class Errc {
  // graph validation
  LoopEdge,
  Disconnected,
  NonpositiveLength,
  DuplicateId,
  NoEdges,
  UnknownId,
  InvalidPoint,
  NonpositiveFactor,
  // divisor and reduction preconditions
  UnsafeEpsilon,
  NotConnected,
  NotBoundary,
  NotEffective,
  NotSaturated,
  InvalidArgument,
  EmptySystem,
  // rank
  InvalidVertexSet,
  EmptySet,
  NotUnitGraph,
  NotVertexSupported,
  // special open sets
  EmptyRegion,
  InvalidWitness,
  NotRds,
  NotSpanningTree,
  // workspace files
  ParseError,
  // defects: a proven-terminating procedure ran past its cap, or geometry
  // that cannot occur did occur
  InternalGeometry,
  IterationCapExceeded,
  SearchCapExceeded,
};

const char* errc_name(Errc code) noexcept;

/// True for the codes that indicate a defect or an exhausted cap rather than
/// bad input.
bool is_internal_defect(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tdl
