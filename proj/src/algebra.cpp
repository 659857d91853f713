#include "hyperlog/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace hyperlog {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::RealInput: return "RealInput";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::NegativeRealOrZero: return "NegativeRealOrZero";
        case Errc::NotOnManifold: return "NotOnManifold";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::RefinementBudgetExceeded: return "RefinementBudgetExceeded";
        case Errc::EndpointMismatch: return "EndpointMismatch";
        case Errc::ZeroOnPath: return "ZeroOnPath";
        case Errc::MissingEndpointLimit: return "MissingEndpointLimit";
        case Errc::InitialMismatch: return "InitialMismatch";
        case Errc::SliceMismatch: return "SliceMismatch";
        case Errc::NotLiftable: return "NotLiftable";
        case Errc::MissingInitialUnit: return "MissingInitialUnit";
        case Errc::NoLift: return "NoLift";
        case Errc::HypothesisViolated: return "HypothesisViolated";
        case Errc::UnresolvedKind: return "UnresolvedKind";
        case Errc::AllRealLoop: return "AllRealLoop";
        case Errc::TwistedLoop: return "TwistedLoop";
        case Errc::StepTooLarge: return "StepTooLarge";
        case Errc::NotApplicable: return "NotApplicable";
        case Errc::UnknownDemo: return "UnknownDemo";
        case Errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

namespace {

void require_same_dim(const Hyper& a, const Hyper& b) {
    if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "operands live in different algebras");
}

// Cayley-Dickson product on coefficient blocks of length n (a power of two):
// (p, q)(r, s) = (p r - conj(s) q, s p + q conj(r)).
void cd_conj(const double* x, double* out, std::size_t n) {
    out[0] = x[0];
    for (std::size_t i = 1; i < n; ++i) out[i] = -x[i];
}

void cd_mul(const double* x, const double* y, double* out, std::size_t n) {
    if (n == 1) {
        out[0] = x[0] * y[0];
        return;
    }
    const std::size_t h = n / 2;
    const double* p = x;
    const double* q = x + h;
    const double* r = y;
    const double* s = y + h;
    double sc[4], rc[4], t1[4], t2[4];
    cd_conj(s, sc, h);
    cd_conj(r, rc, h);
    cd_mul(p, r, t1, h);
    cd_mul(sc, q, t2, h);
    for (std::size_t i = 0; i < h; ++i) out[i] = t1[i] - t2[i];
    cd_mul(s, p, t1, h);
    cd_mul(q, rc, t2, h);
    for (std::size_t i = 0; i < h; ++i) out[h + i] = t1[i] + t2[i];
}

}  // namespace

Hyper::Hyper(Dim dim, std::initializer_list<double> coeffs)
    : Hyper(dim, std::span<const double>(coeffs.begin(), coeffs.size())) {}

Hyper::Hyper(Dim dim, std::span<const double> coeffs) : dim_(dim) {
    if (coeffs.size() > size()) throw Error(Errc::DimensionMismatch, "too many coefficients");
    std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

Hyper Hyper::real(double x, Dim dim) {
    Hyper h(dim);
    h.c_[0] = x;
    return h;
}

Hyper Hyper::basis(std::size_t index, Dim dim) {
    Hyper h(dim);
    if (index >= h.size()) throw Error(Errc::DimensionMismatch, "basis index out of range");
    h.c_[index] = 1.0;
    return h;
}

Hyper Hyper::im() const {
    Hyper h = *this;
    h.c_[0] = 0.0;
    return h;
}

Hyper Hyper::conj() const {
    Hyper h = -*this;
    h.c_[0] = c_[0];
    return h;
}

double Hyper::norm2() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += c_[i] * c_[i];
    return s;
}

double Hyper::norm() const { return std::sqrt(norm2()); }

double Hyper::im_norm() const {
    double s = 0.0;
    for (std::size_t i = 1; i < size(); ++i) s += c_[i] * c_[i];
    return std::sqrt(s);
}

Hyper Hyper::operator-() const {
    Hyper h = *this;
    for (auto& x : h.c_) x = -x;
    return h;
}

Hyper& Hyper::operator+=(const Hyper& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < 8; ++i) c_[i] += o.c_[i];
    return *this;
}

Hyper& Hyper::operator-=(const Hyper& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < 8; ++i) c_[i] -= o.c_[i];
    return *this;
}

Hyper& Hyper::operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Hyper operator*(const Hyper& a, const Hyper& b) {
    require_same_dim(a, b);
    Hyper out(a.dim());
    cd_mul(a.c_.data(), b.c_.data(), out.c_.data(), a.size());
    return out;
}

double dot(const Hyper& a, const Hyper& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double distance(const Hyper& a, const Hyper& b) { return (a - b).norm(); }

std::ostream& operator<<(std::ostream& os, const Hyper& q) {
    os << '(';
    for (std::size_t i = 0; i < q.size(); ++i) os << (i ? ", " : "") << q[i];
    return os << ')';
}

bool is_real(const Hyper& q, const Tolerances& tol) { return q.im_norm() <= tol.real_eps(q.norm()); }

ImaginaryUnit ImaginaryUnit::from(const Hyper& q) {
    const double r = q.im_norm();
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(Errc::RealInput, "element has no imaginary direction");
    return ImaginaryUnit(q.im() / r);
}

double angle_between(const ImaginaryUnit& a, const ImaginaryUnit& b) {
    // Chord-based formula: accurate for nearly equal units, unlike acos of the dot product.
    const double chord = distance(a.value(), b.value());
    return 2.0 * std::asin(std::clamp(chord / 2.0, 0.0, 1.0));
}

double projective_angle(const ImaginaryUnit& a, const ImaginaryUnit& b) {
    const double chord = std::min(distance(a.value(), b.value()), distance(a.value(), -b.value()));
    return 2.0 * std::asin(std::clamp(chord / 2.0, 0.0, 1.0));
}

namespace {
ImaginaryUnit canonical_sign(const ImaginaryUnit& u) {
    for (std::size_t i = 1; i < u.value().size(); ++i) {
        const double c = u.value()[i];
        if (std::abs(c) > 1e-12) return c > 0 ? u : -u;
    }
    return u;
}
}  // namespace

ProjectiveUnit::ProjectiveUnit(const ImaginaryUnit& u) : rep_(canonical_sign(u)) {}

bool ProjectiveUnit::same(const ProjectiveUnit& o, double tol) const {
    return projective_angle(rep_, o.rep_) <= tol;
}

ImaginaryUnit unit_im(const Hyper& q, const Tolerances& tol) {
    if (is_real(q, tol)) throw Error(Errc::RealInput, "imaginary unit undefined on the real axis");
    return ImaginaryUnit::from(q);
}

double arg_principal(const Hyper& q) { return std::atan2(q.im_norm(), q.re()); }

BranchArg arg_branch(const ImaginaryUnit& unit, double x, double r, long k) {
    constexpr double pi = std::numbers::pi;
    const double a = std::atan2(r, x);
    const long l = half_floor(k);
    if (is_even(k)) return {unit, a + 2.0 * pi * static_cast<double>(l)};
    return {-unit, 2.0 * pi - a + 2.0 * pi * static_cast<double>(l)};
}

BranchArg arg_branch(const Hyper& q, long k, const Tolerances& tol) {
    const ImaginaryUnit u = unit_im(q, tol);
    return arg_branch(u, q.re(), q.im_norm(), k);
}

Hyper Arg_branch(const Hyper& q, long k, const Tolerances& tol) {
    const BranchArg b = arg_branch(q, k, tol);
    return b.unit.value() * b.angle;
}

Hyper exp_h(const Hyper& q) {
    const double r = q.im_norm();
    const double ex = std::exp(q.re());
    Hyper out = Hyper::real(ex * std::cos(r), q.dim());
    if (r > 0.0) out += q.im() * (ex * std::sin(r) / r);
    return out;
}

Hyper log_principal(const Hyper& q, const Tolerances& tol) {
    const double n = q.norm();
    if (n == 0.0) throw Error(Errc::ZeroInput, "logarithm of zero");
    if (is_real(q, tol)) {
        if (q.re() <= 0.0) throw Error(Errc::NegativeRealOrZero, "principal logarithm undefined on the negative reals");
        return Hyper::real(std::log(n), q.dim());
    }
    const ImaginaryUnit u = ImaginaryUnit::from(q);
    return Hyper::real(std::log(n), q.dim()) + u.value() * arg_principal(q);
}

ManifoldPoint E_map(const Hyper& q) { return {exp_h(q), q.im()}; }

ManifoldPoint T_map(const Hyper& q) {
    const double x = q.re();
    const double y = q.im_norm();
    Hyper first = Hyper::real(std::sinh(x) * std::cos(y), q.dim());
    if (y > 0.0) first += q.im() * (std::sinh(x) * std::sin(y) / y);
    return {first, q.im()};
}

bool on_manifold(const ManifoldPoint& pt, double tol) {
    if (pt.q.dim() != pt.p.dim()) return false;
    const double n = pt.q.norm();
    if (n == 0.0) return false;
    if (std::abs(pt.p.re()) > tol) return false;
    return distance(pt.q, exp_h(pt.p) * n) <= tol * std::max(1.0, n);
}

Hyper L_map(const ManifoldPoint& pt, double tol) {
    if (!on_manifold(pt, tol)) throw Error(Errc::NotOnManifold, "point does not satisfy q = |q| exp(p)");
    return Hyper::real(std::log(pt.q.norm()), pt.q.dim()) + pt.p.im();
}

ImaginaryUnit orthogonal_unit(const ImaginaryUnit& u) {
    const Hyper& v = u.value();
    for (std::size_t i = 1; i < v.size(); ++i) {
        Hyper e = Hyper::basis(i, v.dim());
        Hyper w = e - v * dot(e, v);
        const double n = w.norm();
        if (n > 0.5) return ImaginaryUnit::unchecked(w / n);
    }
    throw Error(Errc::DimensionMismatch, "no orthogonal unit available");
}

ImaginaryUnit slerp_units(const ImaginaryUnit& from, const ImaginaryUnit& to, double f) {
    const Hyper& a = from.value();
    const double c = std::clamp(dot(a, to.value()), -1.0, 1.0);
    const double omega = std::acos(c);
    if (omega < 1e-12) return from;
    Hyper perp;
    if (std::numbers::pi - omega < 1e-9) {
        perp = orthogonal_unit(from).value();
    } else {
        perp = to.value() - a * c;
        perp = perp / perp.norm();
    }
    const double phi = omega * f;
    Hyper w = a * std::cos(phi) + perp * std::sin(phi);
    return ImaginaryUnit::unchecked(w / w.norm());
}

}  // namespace hyperlog
