#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphshop {

// Base of every error the engine raises. `code()` is the stable machine name
// used in CLI diagnostics and HTTP error bodies; `path()` points into the
// offending document when one is known (JSON-pointer-ish, e.g.
// "components[1].alternatives[0].id").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail, std::string path = {})
      : std::runtime_error(detail), code_(std::move(code)), path_(std::move(path)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string code_;
  std::string path_;
};

#define MORPHSHOP_DEFINE_ERROR(Name, Code)                                  \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& detail, std::string path = {})         \
        : Error(Code, detail, std::move(path)) {}                           \
  };

MORPHSHOP_DEFINE_ERROR(ParseError, "ParseError")
MORPHSHOP_DEFINE_ERROR(ValidationError, "ValidationError")
MORPHSHOP_DEFINE_ERROR(UnknownIdError, "UnknownIdError")
MORPHSHOP_DEFINE_ERROR(SameComponentError, "SameComponentError")
MORPHSHOP_DEFINE_ERROR(IncompleteSelectionError, "IncompleteSelectionError")
MORPHSHOP_DEFINE_ERROR(ScaleMismatchError, "ScaleMismatchError")
MORPHSHOP_DEFINE_ERROR(EmptyTableError, "EmptyTableError")
MORPHSHOP_DEFINE_ERROR(CapacityOverflowError, "CapacityOverflowError")
MORPHSHOP_DEFINE_ERROR(InfeasibleError, "InfeasibleError")
MORPHSHOP_DEFINE_ERROR(ConflictError, "ConflictError")
MORPHSHOP_DEFINE_ERROR(EmptyComponentError, "EmptyComponentError")
MORPHSHOP_DEFINE_ERROR(ComponentMismatchError, "ComponentMismatchError")
MORPHSHOP_DEFINE_ERROR(EmptyStageError, "EmptyStageError")

#undef MORPHSHOP_DEFINE_ERROR

// Raised when a composition would enumerate more candidates than allowed.
class ExplosionError : public Error {
 public:
  ExplosionError(const std::string& detail, std::size_t cap)
      : Error("ExplosionError", detail), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace morphshop
