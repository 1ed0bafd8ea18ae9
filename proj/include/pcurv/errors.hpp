#pragma once

#include <stdexcept>
#include <string>

namespace pcurv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define PCURV_ERROR_TYPE(Name)                       \
    struct Name : Error {                            \
        explicit Name(const std::string& msg = #Name) : Error(msg) {} \
    }

PCURV_ERROR_TYPE(NotPPower);
PCURV_ERROR_TYPE(UnsupportedSearchSpace);
PCURV_ERROR_TYPE(DuplicateSingularity);
PCURV_ERROR_TYPE(BadArity);
PCURV_ERROR_TYPE(ExponentsNotInPrimeField);
PCURV_ERROR_TYPE(P1MismatchQ);
PCURV_ERROR_TYPE(InternalInconsistency);
PCURV_ERROR_TYPE(NotLogarithmicShape);
PCURV_ERROR_TYPE(UNonSquarefree);
PCURV_ERROR_TYPE(UMeetsSingularity);
PCURV_ERROR_TYPE(ShapeError);
PCURV_ERROR_TYPE(ResidueObstruction);
PCURV_ERROR_TYPE(StrengthMismatch);
PCURV_ERROR_TYPE(DivisibilityError);
PCURV_ERROR_TYPE(DegreeNotAdmissible);
PCURV_ERROR_TYPE(GridTooLarge);
PCURV_ERROR_TYPE(HypothesisViolated);

#undef PCURV_ERROR_TYPE

}  // namespace pcurv
