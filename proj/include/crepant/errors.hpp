#pragma once

#include <stdexcept>
#include <string>

namespace crepant {

/// Base of every typed error thrown by this library. what() is always
/// "<ErrorName>: <detail>".
class Error : public std::runtime_error {
public:
    Error(const std::string& name, const std::string& detail)
        : std::runtime_error(name + ": " + detail) {}
};

#define CREPANT_ERROR(Name)                                                  \
    class Name : public Error {                                             \
    public:                                                                  \
        explicit Name(const std::string& detail) : Error(#Name, detail) {}   \
    }

// scalars
CREPANT_ERROR(DivisionByZero);

// graded_algebra
CREPANT_ERROR(DegeneratePairing);
CREPANT_ERROR(GradingViolation);
CREPANT_ERROR(OddDegreeUnsupported);
CREPANT_ERROR(NonRealEntry);

// sector_model
CREPANT_ERROR(InvalidGroupTable);
CREPANT_ERROR(ExponentOutOfRange);
CREPANT_ERROR(InvalidPartition);
CREPANT_ERROR(NonIntegerSignExponent);
CREPANT_ERROR(NonIntegerIota);
CREPANT_ERROR(NotAnInvolution);
CREPANT_ERROR(SectorMismatch);
CREPANT_ERROR(NotHermitian);

// quantum_correction
CREPANT_ERROR(PoleAtOne);
CREPANT_ERROR(DegenerateRays);
CREPANT_ERROR(BasisMismatch);
CREPANT_ERROR(UnsupportedTailKind);

// isomorphism
CREPANT_ERROR(ShapeMismatch);
CREPANT_ERROR(SingularMap);

// bundle / cli
CREPANT_ERROR(ParseError);
CREPANT_ERROR(UnresolvedSymbol);
CREPANT_ERROR(SchemaViolation);
CREPANT_ERROR(UnknownFixture);

#undef CREPANT_ERROR

} // namespace crepant
