#pragma once

#include <string>
#include <vector>

#include "hyperlog/algebra.hpp"
#include "hyperlog/obstruction.hpp"
#include "hyperlog/pathkit.hpp"

namespace hyperlog {

/// Continuous projective-unit path with γ(t) in the slice of units(t).
struct Companion {
    std::vector<double> t;
    std::vector<ProjectiveUnit> units;
    bool exists = true;
    bool unique = true;
    std::string reason;  ///< why it does not exist or is not unique

    std::size_t size() const { return t.size(); }
};

/// One of the two continuous unit paths above a companion.
struct CompanionLift {
    std::vector<double> t;
    std::vector<ImaginaryUnit> units;
    int sign_choice = 1;  ///< +1 when the initial unit equals the companion's representative
};

/// Plane curve x(t) + i y(t) of a canonical form γ = x + 𝓘 y.
struct Shadow {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
    bool conjugate = false;  ///< produced from the negated lift

    std::size_t size() const { return t.size(); }
    Shadow conjugated() const;
};

struct CanonicalForm {
    std::vector<double> x;
    std::vector<double> y;
    double residual = 0.0;  ///< max |x + 𝓘 y - γ|
};

/// Companion at the sample parameters, resolving obstruction intervals through
/// the kinds stored in the report (see apply_directives).
Companion build_companion(const SampledPath& sp, const ObstructionReport& rep);

/// Sign-consistent propagation starting from `initial`; throws InitialMismatch if
/// initial is not a representative of the companion at its first sample.
CompanionLift lift_companion(const Companion& c, const ImaginaryUnit& initial, double tol = 1e-6);

CanonicalForm canonical_form(const SampledPath& sp, const CompanionLift& cl,
                             const Tolerances& tol = default_tolerances());

Shadow shadow(const std::vector<double>& t, const CanonicalForm& cf, bool conjugate = false);

}  // namespace hyperlog
