#pragma once

#include <stdexcept>
#include <string>

namespace fissura {

/// Base class for every error raised by the library. `kind()` is a stable,
/// machine-readable tag used in CLI error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FISSURA_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

FISSURA_DEFINE_ERROR(InvalidPolygon);
FISSURA_DEFINE_ERROR(InvalidSurface);
FISSURA_DEFINE_ERROR(DomainTooSmall);
FISSURA_DEFINE_ERROR(AcutenessUnachievable);
FISSURA_DEFINE_ERROR(InvalidMesh);
FISSURA_DEFINE_ERROR(InvalidNormal);
FISSURA_DEFINE_ERROR(InvalidFluid);
FISSURA_DEFINE_ERROR(BoundaryEdge);
FISSURA_DEFINE_ERROR(NotUnit);
FISSURA_DEFINE_ERROR(DegenerateTriangle);
FISSURA_DEFINE_ERROR(NotNormalized);
FISSURA_DEFINE_ERROR(CellOverlap);
FISSURA_DEFINE_ERROR(UncoveredSample);
FISSURA_DEFINE_ERROR(NoNeighbors);
FISSURA_DEFINE_ERROR(IoError);

#undef FISSURA_DEFINE_ERROR

/// Raised while reading a run configuration; `field()` names the offending
/// JSON path (e.g. "mesh.edge_length").
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("ConfigError", what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace fissura
