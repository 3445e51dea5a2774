#pragma once

#include <stdexcept>
#include <string>

namespace miyazawa {

// Every failure the engine reports derives from Error. The category decides
// the CLI exit code: validation 1, numerical 2, io 3.
enum class ErrorCategory { Validation = 1, Numerical = 2, Io = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), category_(category), kind_(std::move(kind)) {}

    ErrorCategory category() const noexcept { return category_; }
    // Short class name, e.g. "BalanceError".
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCategory category_;
    std::string kind_;
};

#define MIYAZAWA_DEFINE_ERROR(Name, Category)                                  \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& message)                              \
            : Error(ErrorCategory::Category, #Name, message) {}                \
    };

// accounts
MIYAZAWA_DEFINE_ERROR(MissingFile, Io)
MIYAZAWA_DEFINE_ERROR(SchemaError, Validation)
MIYAZAWA_DEFINE_ERROR(BalanceError, Validation)
MIYAZAWA_DEFINE_ERROR(NonFiniteError, Validation)
MIYAZAWA_DEFINE_ERROR(GroupSetError, Validation)
MIYAZAWA_DEFINE_ERROR(DimensionError, Validation)
MIYAZAWA_DEFINE_ERROR(UnknownSector, Validation)
MIYAZAWA_DEFINE_ERROR(MissingSector, Validation)
MIYAZAWA_DEFINE_ERROR(NegativeIntensity, Validation)
MIYAZAWA_DEFINE_ERROR(ConsumptionShareError, Validation)

// coefficients
MIYAZAWA_DEFINE_ERROR(DegenerateSectorError, Validation)
MIYAZAWA_DEFINE_ERROR(ZeroIncomeError, Validation)

// linear algebra
MIYAZAWA_DEFINE_ERROR(NonProductiveError, Numerical)
MIYAZAWA_DEFINE_ERROR(SingularError, Numerical)

// inequality
MIYAZAWA_DEFINE_ERROR(ZeroTotalIncome, Validation)
MIYAZAWA_DEFINE_ERROR(GroupMismatch, Validation)

// output
MIYAZAWA_DEFINE_ERROR(IoError, Io)

#undef MIYAZAWA_DEFINE_ERROR

}  // namespace miyazawa
