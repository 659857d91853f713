#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlog {

enum class Errc {
    RealInput,
    ZeroInput,
    NegativeRealOrZero,
    NotOnManifold,
    DimensionMismatch,
    OutOfDomain,
    RefinementBudgetExceeded,
    EndpointMismatch,
    ZeroOnPath,
    MissingEndpointLimit,
    InitialMismatch,
    SliceMismatch,
    NotLiftable,
    MissingInitialUnit,
    NoLift,
    HypothesisViolated,
    UnresolvedKind,
    AllRealLoop,
    TwistedLoop,
    StepTooLarge,
    NotApplicable,
    UnknownDemo,
    BadInput,
};

std::string_view errc_name(Errc code) noexcept;

// All library failures carry a machine-readable code next to the message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace hyperlog
