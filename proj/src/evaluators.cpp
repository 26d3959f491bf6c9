#include "algeval/evaluators.hpp"

namespace algeval {

const char* failure_kind_name(FailureKind kind) {
    switch (kind) {
        case FailureKind::EmptyVariety: return "EmptyVariety";
        case FailureKind::ComplexSolution: return "ComplexSolution";
        case FailureKind::OutsideUnitCube: return "OutsideUnitCube";
        case FailureKind::UnresolvedSquareRoot: return "UnresolvedSquareRoot";
    }
    return "unknown";
}

}  // namespace algeval
