#pragma once

#include <algorithm>
#include <cstddef>

namespace hyperlog {

/// Numerical knobs shared by every stage of the analysis pipeline.
struct Tolerances {
    double eps_real = 1e-9;      ///< relative real-axis membership, scaled by max(1,|q|)
    double eps_exact = 1e-13;    ///< "numerically zero" imaginary part, separates real intervals from touches
    double theta_step = 0.1;     ///< max projective rotation of the unit between clean samples
    double chord_angle = 0.25;   ///< max angle between consecutive samples seen as vectors
    double modulus_ratio = 0.1;  ///< max relative |gamma| variation between samples
    int d_max = 24;              ///< bisection depth budget per initial interval
    std::size_t max_samples = std::size_t{1} << 20;
    double theta_tol = 1e-6;     ///< equal/opposite direction comparison
    int limit_iterations = 40;   ///< J in the one-sided limit sequence
    double limit_floor = 1e-9;   ///< smallest probe offset, relative to the domain length
    double locate_tol = 1e-12;   ///< crossing localization, relative to the domain length
    double tol_lift = 1e-8;

    double real_eps(double modulus) const { return eps_real * std::max(1.0, modulus); }
    double exact_eps(double modulus) const { return eps_exact * std::max(1.0, modulus); }
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace hyperlog
