#pragma once

#include <stdexcept>
#include <string>

namespace sgx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SGX_ERROR(Name)                  \
    struct Name : Error {                \
        using Error::Error;              \
    }

SGX_ERROR(DomainError);
SGX_ERROR(NoConvergence);
SGX_ERROR(ForbiddenValue);
SGX_ERROR(ForbiddenAlpha);
SGX_ERROR(LevelTooLarge);
SGX_ERROR(ZeroVector);
SGX_ERROR(NoSuchEigenvalue);
SGX_ERROR(AmbiguousClassification);
SGX_ERROR(CoverageViolation);
SGX_ERROR(MismatchReport);
SGX_ERROR(BracketViolation);

#undef SGX_ERROR

}  // namespace sgx
