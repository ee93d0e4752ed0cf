#pragma once

#include <stdexcept>
#include <string>

namespace circon {

// Base for every failure of a geometric precondition or runtime geometric
// degeneracy. The CLI maps these to exit code 3; config/usage problems are
// ValidationError (exit code 2).
class GeometryError : public std::runtime_error {
public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

#define CIRCON_DEFINE_ERROR(Name, Base)                                       \
  class Name : public Base {                                                  \
  public:                                                                     \
    explicit Name(const std::string& what) : Base(what) {}                    \
  }

CIRCON_DEFINE_ERROR(RankDeficientError, GeometryError);
CIRCON_DEFINE_ERROR(WrongDimensionError, GeometryError);
CIRCON_DEFINE_ERROR(DegenerateFiberError, GeometryError);
CIRCON_DEFINE_ERROR(PunctureHitError, GeometryError);
CIRCON_DEFINE_ERROR(NoFiberSolutionError, GeometryError);
CIRCON_DEFINE_ERROR(EmptyFamilyError, GeometryError);
CIRCON_DEFINE_ERROR(EmptyBodyError, GeometryError);
CIRCON_DEFINE_ERROR(ResolutionTooCoarseError, GeometryError);
CIRCON_DEFINE_ERROR(UnknownCorpusNameError, ValidationError);
CIRCON_DEFINE_ERROR(BadParamsError, ValidationError);
CIRCON_DEFINE_ERROR(EmptyProfilesError, GeometryError);
CIRCON_DEFINE_ERROR(UnsupportedGroupError, ValidationError);
CIRCON_DEFINE_ERROR(BadBudgetError, ValidationError);
CIRCON_DEFINE_ERROR(UnsupportedCombinationError, ValidationError);
CIRCON_DEFINE_ERROR(SurroundsAxisError, GeometryError);
CIRCON_DEFINE_ERROR(DegenerateProjectionError, GeometryError);
CIRCON_DEFINE_ERROR(IoError, GeometryError);

#undef CIRCON_DEFINE_ERROR

} // namespace circon
