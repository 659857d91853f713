#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>

#include "hyperlog/error.hpp"
#include "hyperlog/tolerances.hpp"

namespace hyperlog {

enum class Dim : std::size_t { quaternion = 4, octonion = 8 };

constexpr std::size_t size_of(Dim d) { return static_cast<std::size_t>(d); }

// Element of the quaternions or octonions, basis order (1, i, j, k[, e, ie, je, ke]).
// Unused trailing coefficients of a quaternion are kept at zero.
class Hyper {
public:
    Hyper() = default;
    explicit Hyper(Dim dim) : dim_(dim) {}
    Hyper(Dim dim, std::initializer_list<double> coeffs);
    Hyper(Dim dim, std::span<const double> coeffs);

    static Hyper real(double x, Dim dim = Dim::quaternion);
    /// Basis element e_index (index 0 is the real unit).
    static Hyper basis(std::size_t index, Dim dim = Dim::quaternion);

    Dim dim() const { return dim_; }
    std::size_t size() const { return size_of(dim_); }
    std::span<const double> coeffs() const { return {c_.data(), size()}; }
    double operator[](std::size_t n) const { return c_[n]; }
    double& operator[](std::size_t n) { return c_[n]; }

    double re() const { return c_[0]; }
    Hyper im() const;
    Hyper conj() const;
    double norm() const;
    double norm2() const;
    double im_norm() const;

    Hyper operator-() const;
    Hyper& operator+=(const Hyper& o);
    Hyper& operator-=(const Hyper& o);
    Hyper& operator*=(double s);

    friend Hyper operator+(Hyper a, const Hyper& b) { return a += b; }
    friend Hyper operator-(Hyper a, const Hyper& b) { return a -= b; }
    friend Hyper operator*(Hyper a, double s) { return a *= s; }
    friend Hyper operator*(double s, Hyper a) { return a *= s; }
    friend Hyper operator/(Hyper a, double s) { return a *= 1.0 / s; }
    friend Hyper operator*(const Hyper& a, const Hyper& b);

    friend bool operator==(const Hyper&, const Hyper&) = default;

private:
    Dim dim_ = Dim::quaternion;
    std::array<double, 8> c_{};
};

/// Euclidean inner product of coefficient vectors.
double dot(const Hyper& a, const Hyper& b);
double distance(const Hyper& a, const Hyper& b);
std::ostream& operator<<(std::ostream& os, const Hyper& q);

bool is_real(const Hyper& q, const Tolerances& tol = default_tolerances());

/// Unit-norm purely imaginary element; squares to -1.
class ImaginaryUnit {
public:
    /// Normalizes the imaginary part of q. Throws RealInput when it vanishes.
    static ImaginaryUnit from(const Hyper& q);
    /// Trusts that v is already a unit imaginary (used by internal propagation).
    static ImaginaryUnit unchecked(const Hyper& v) { return ImaginaryUnit(v); }

    const Hyper& value() const { return v_; }
    Dim dim() const { return v_.dim(); }
    ImaginaryUnit operator-() const { return ImaginaryUnit(-v_); }

private:
    explicit ImaginaryUnit(const Hyper& v) : v_(v) {}
    Hyper v_;
};

/// Angle in [0, pi] between two units.
double angle_between(const ImaginaryUnit& a, const ImaginaryUnit& b);
/// Angle in [0, pi/2] between the slices C_a and C_b.
double projective_angle(const ImaginaryUnit& a, const ImaginaryUnit& b);

/// Point of S / {+-1}; the stored representative has its first nonzero coefficient positive.
class ProjectiveUnit {
public:
    explicit ProjectiveUnit(const ImaginaryUnit& u);
    const ImaginaryUnit& representative() const { return rep_; }
    bool same(const ProjectiveUnit& o, double tol = 1e-9) const;

private:
    ImaginaryUnit rep_;
};

/// Point (q, p) of K x Im(K); lies on the logarithmic manifold when q = |q| exp(p).
struct ManifoldPoint {
    Hyper q;
    Hyper p;
};

/// Imaginary unit function: Im(q)/|Im(q)|.
ImaginaryUnit unit_im(const Hyper& q, const Tolerances& tol = default_tolerances());

/// Principal argument in [0, pi]; 0 on the positive reals and pi on the negative reals.
double arg_principal(const Hyper& q);

struct BranchArg {
    ImaginaryUnit unit;
    double angle;
};

/// k-th branch (unit, angle) of the hypercomplex argument; angle lies in (k pi, (k+1) pi).
BranchArg arg_branch(const Hyper& q, long k, const Tolerances& tol = default_tolerances());
/// Same, from a precomputed slice frame: q = x + unit * r with r >= 0.
BranchArg arg_branch(const ImaginaryUnit& unit, double x, double r, long k);

/// Arg_k(q) = I_k(q) arg_k(q).
Hyper Arg_branch(const Hyper& q, long k, const Tolerances& tol = default_tolerances());

Hyper exp_h(const Hyper& q);
Hyper log_principal(const Hyper& q, const Tolerances& tol = default_tolerances());

ManifoldPoint E_map(const Hyper& q);
ManifoldPoint T_map(const Hyper& q);
Hyper L_map(const ManifoldPoint& pt, double tol = 1e-9);
bool on_manifold(const ManifoldPoint& pt, double tol = 1e-9);

/// Great-circle interpolation between two units. Antipodal pairs go through
/// the first basis unit orthogonal to `from`.
ImaginaryUnit slerp_units(const ImaginaryUnit& from, const ImaginaryUnit& to, double f);
/// Deterministic unit orthogonal to u.
ImaginaryUnit orthogonal_unit(const ImaginaryUnit& u);

/// floor(k / 2) for negative k too.
constexpr long half_floor(long k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }
constexpr bool is_even(long k) { return (k % 2) == 0; }

}  // namespace hyperlog
