#ifndef THETACORR_ERRORS_HPP
#define THETACORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thetacorr {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define THETACORR_DEFINE_ERROR(Name)                                     \
    struct Name : Error {                                                \
        explicit Name(const std::string& what = #Name) : Error(what) {}  \
    }

THETACORR_DEFINE_ERROR(CompositeCharacteristic);
THETACORR_DEFINE_ERROR(EvenCharacteristic);
THETACORR_DEFINE_ERROR(ReducibleModulus);
THETACORR_DEFINE_ERROR(DivisionByZero);
THETACORR_DEFINE_ERROR(ContextMismatch);
THETACORR_DEFINE_ERROR(NoSuchRoot);
THETACORR_DEFINE_ERROR(ZeroPolynomial);
THETACORR_DEFINE_ERROR(InconsistentArity);
THETACORR_DEFINE_ERROR(NotZeroDimensional);
THETACORR_DEFINE_ERROR(NotCoprime);
THETACORR_DEFINE_ERROR(NotDivisible);
THETACORR_DEFINE_ERROR(OddLevel);
THETACORR_DEFINE_ERROR(EvenEll);
THETACORR_DEFINE_ERROR(InvalidNullPoint);
THETACORR_DEFINE_ERROR(ZeroSlice);
THETACORR_DEFINE_ERROR(ZeroImage);
THETACORR_DEFINE_ERROR(WrongRootOrder);
THETACORR_DEFINE_ERROR(MissingRootOfUnity);
THETACORR_DEFINE_ERROR(EmptySubgroup);
THETACORR_DEFINE_ERROR(UnsupportedGenus);
THETACORR_DEFINE_ERROR(ExtensionDegreeExceeded);
THETACORR_DEFINE_ERROR(MalformedInput);

#undef THETACORR_DEFINE_ERROR

}  // namespace thetacorr

#endif
