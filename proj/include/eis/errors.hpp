#pragma once

#include <stdexcept>
#include <string>

namespace eis {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define EIS_DEFINE_ERROR(Name)                                              \
    struct Name : Error {                                                   \
        explicit Name(const std::string& what = #Name) : Error(what) {}     \
    }

// arith
EIS_DEFINE_ERROR(DivisionByZero);
EIS_DEFINE_ERROR(MixedFields);
EIS_DEFINE_ERROR(ZeroIdeal);
EIS_DEFINE_ERROR(NotPrime);
EIS_DEFINE_ERROR(InconsistentConstraints);

// classgrp
EIS_DEFINE_ERROR(MixedDiscriminants);
EIS_DEFINE_ERROR(ZeroModulus);

// cusps
EIS_DEFINE_ERROR(BothZero);
EIS_DEFINE_ERROR(SquareClass);

// characters
EIS_DEFINE_ERROR(NoSuchCharacter);
EIS_DEFINE_ERROR(NotCoprime);
EIS_DEFINE_ERROR(BadAuxPrime);
EIS_DEFINE_ERROR(RamifiedAtV);

// lfun
EIS_DEFINE_ERROR(PrecisionUnreachable);
EIS_DEFINE_ERROR(RamifiedFormulaUnsupported);
EIS_DEFINE_ERROR(SingularCurve);
EIS_DEFINE_ERROR(ReconstructionFailed);
EIS_DEFINE_ERROR(ConductorNotCoprime);

// eisenstein
EIS_DEFINE_ERROR(Singular);
EIS_DEFINE_ERROR(UndefinedAtLevel);
EIS_DEFINE_ERROR(IdentityFails);
EIS_DEFINE_ERROR(RamifiedPrime);

// bound
EIS_DEFINE_ERROR(HypothesesFailed);
EIS_DEFINE_ERROR(NoValuation);

#undef EIS_DEFINE_ERROR

} // namespace eis
