#pragma once

#include <stdexcept>
#include <string>

namespace dsfrob {

struct Error : std::runtime_error
{
	std::string kind;
	Error(std::string k, const std::string &msg) : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

#define DSFROB_ERROR(Name)                                                                         \
	struct Name : Error                                                                            \
	{                                                                                              \
		explicit Name(const std::string &m) : Error(#Name, m) {}                                   \
	};

DSFROB_ERROR(UnsupportedType)
DSFROB_ERROR(RankBound)
DSFROB_ERROR(SolveFailure)
DSFROB_ERROR(OddDegree)
DSFROB_ERROR(DimensionMismatch)
DSFROB_ERROR(NormalizationFailure)
DSFROB_ERROR(NotRegularSemisimple)
DSFROB_ERROR(AnsatzUnsolvable)
DSFROB_ERROR(GradedSolveFailure)
DSFROB_ERROR(NotInvariant)
DSFROB_ERROR(NoDispersionlessLimit)
DSFROB_ERROR(OrderingFailure)
DSFROB_ERROR(SingularBlock)
DSFROB_ERROR(AnsatzExhausted)
DSFROB_ERROR(AxiomFailure)
DSFROB_ERROR(IntegrabilityFailure)
DSFROB_ERROR(FormatError)

#undef DSFROB_ERROR

} // namespace dsfrob
