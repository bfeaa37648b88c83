#pragma once

#include <stdexcept>
#include <string>

namespace spinconsensus
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

#define SPINCONSENSUS_DEFINE_ERROR(Name, Base)                                 \
	class Name : public Base                                                   \
	{                                                                          \
	public:                                                                    \
		using Base::Base;                                                      \
	};

// spin algebra
SPINCONSENSUS_DEFINE_ERROR(NormalizationError, Error)
SPINCONSENSUS_DEFINE_ERROR(SiteOutOfRange, Error)
SPINCONSENSUS_DEFINE_ERROR(DimensionCapExceeded, Error)
SPINCONSENSUS_DEFINE_ERROR(EmptyFactorList, Error)
SPINCONSENSUS_DEFINE_ERROR(DimensionMismatch, Error)

// spectral / thermal
SPINCONSENSUS_DEFINE_ERROR(NotHermitian, Error)
SPINCONSENSUS_DEFINE_ERROR(NegativeBeta, Error)
SPINCONSENSUS_DEFINE_ERROR(OverflowRisk, Error)

// mean field
SPINCONSENSUS_DEFINE_ERROR(NonPositiveBeta, Error)
SPINCONSENSUS_DEFINE_ERROR(NonPositiveTolerance, Error)
SPINCONSENSUS_DEFINE_ERROR(NonNegativeCoupling, Error)
SPINCONSENSUS_DEFINE_ERROR(NonUnitBloch, Error)

// harness
SPINCONSENSUS_DEFINE_ERROR(InvalidConfig, Error)
SPINCONSENSUS_DEFINE_ERROR(UnknownFlag, InvalidConfig)
SPINCONSENSUS_DEFINE_ERROR(MissingRequired, InvalidConfig)
SPINCONSENSUS_DEFINE_ERROR(FieldTypeError, InvalidConfig)
SPINCONSENSUS_DEFINE_ERROR(IoFailure, Error)

#undef SPINCONSENSUS_DEFINE_ERROR

} // namespace spinconsensus
