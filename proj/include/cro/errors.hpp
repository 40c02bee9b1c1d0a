#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cro {

// Base for every error raised by the library. code() is a stable identifier
// used in machine-readable error lines.
class Error : public std::runtime_error {
 public:
  Error(std::string_view code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  std::string_view code() const noexcept { return code_; }

 private:
  std::string_view code_;
};

#define CRO_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

CRO_DEFINE_ERROR(NonFiniteObjective);
CRO_DEFINE_ERROR(BudgetExhausted);
CRO_DEFINE_ERROR(DimensionMismatch);
CRO_DEFINE_ERROR(SameMolecule);
CRO_DEFINE_ERROR(PopulationTooSmall);
CRO_DEFINE_ERROR(InvalidConfig);
CRO_DEFINE_ERROR(EnergyLedgerViolation);
CRO_DEFINE_ERROR(IoError);
CRO_DEFINE_ERROR(FormatError);
CRO_DEFINE_ERROR(ChecksumMismatch);
CRO_DEFINE_ERROR(EmptyCell);

#undef CRO_DEFINE_ERROR

}  // namespace cro
