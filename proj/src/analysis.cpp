#include "capedu/analysis.hpp"

#include "capedu/errors.hpp"

#include <algorithm>
#include <cmath>

namespace capedu {

namespace {

void require_nondegenerate(const ModelParams& p) {
    if (std::abs(p.alpha + p.beta - 1.0) < kDegeneracyThreshold)
        throw StructurallyUnstable(
            "alpha + beta = 1: no isolated equilibrium (structurally unstable case)");
}

bool is_real(const std::complex<double>& z) {
    return std::abs(z.imag()) <= kDegeneracyThreshold * std::max(1.0, std::abs(z.real()));
}

} // namespace

double Matrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        t += (*this)(i, i);
    return t;
}

double Matrix::determinant() const {
    const Matrix& m = *this;
    if (n_ == 2)
        return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (n_ == 3)
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    throw Error("determinant is only implemented for 2x2 and 3x3 matrices");
}

std::string_view to_string(StabilityClass c) {
    switch (c) {
    case StabilityClass::StableNode: return "StableNode";
    case StabilityClass::StableFocus: return "StableFocus";
    case StabilityClass::Saddle: return "Saddle";
    case StabilityClass::Unstable: return "Unstable";
    case StabilityClass::Degenerate: return "Degenerate";
    }
    return "Degenerate";
}

EconState equilibrium(const ModelParams& p) {
    require_nondegenerate(p);
    if (!(p.s_k > 0.0) || !(p.s_r > 0.0))
        throw DomainError("a positive equilibrium needs s_k > 0 and s_r > 0");

    // alpha ln E - (1 - beta) ln K = ln(delta_k / s_k)
    // -(1 - alpha) ln E + beta ln K = ln(delta_r / s_r)
    const double rhs_k = std::log(p.delta_k / p.s_k);
    const double rhs_r = std::log(p.delta_r / p.s_r);
    const double det = p.alpha + p.beta - 1.0;
    const double log_E = (p.beta * rhs_k + (1.0 - p.beta) * rhs_r) / det;
    const double log_K = (p.alpha * rhs_r + (1.0 - p.alpha) * rhs_k) / det;
    return {std::exp(log_K), std::exp(log_E)};
}

Matrix jacobian_basic(const ModelParams& p) {
    require_nondegenerate(p);
    Matrix j(2);
    j(0, 0) = (p.beta - 1.0) * p.delta_k;
    j(0, 1) = p.alpha * (p.s_k / p.s_r) * p.delta_r;
    j(1, 0) = p.beta * (p.s_r / p.s_k) * p.delta_k;
    j(1, 1) = (p.alpha - 1.0) * p.delta_r;
    return j;
}

std::array<std::complex<double>, 2> eigen_basic(const ModelParams& params) {
    require_nondegenerate(params);
    // trace and determinant in closed form rather than from the matrix entries
    const double tr = (params.alpha - 1.0) * params.delta_r + (params.beta - 1.0) * params.delta_k;
    const double det = (1.0 - params.alpha - params.beta) * params.delta_r * params.delta_k;

    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        // cancellation-free pairing: q is the root of larger magnitude
        const double root = std::sqrt(disc);
        const double q = 0.5 * (tr + std::copysign(root, tr));
        double l1 = q;
        double l2 = q != 0.0 ? det / q : 0.0;
        if (l2 > l1)
            std::swap(l1, l2);
        return {std::complex<double>(l1, 0.0), std::complex<double>(l2, 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(0.5 * tr, im), std::complex<double>(0.5 * tr, -im)};
}

StabilityClass classify(std::span<const std::complex<double>> eigenvalues) {
    if (eigenvalues.empty())
        throw Error("classify needs at least one eigenvalue");

    bool any_complex = false, any_positive = false, any_negative = false;
    for (const auto& z : eigenvalues) {
        if (std::abs(z) < kDegeneracyThreshold || std::abs(z.real()) < kDegeneracyThreshold)
            return StabilityClass::Degenerate;
        any_complex |= !is_real(z);
        (z.real() > 0.0 ? any_positive : any_negative) = true;
    }
    if (!any_positive)
        return any_complex ? StabilityClass::StableFocus : StabilityClass::StableNode;
    if (!any_complex && any_negative)
        return StabilityClass::Saddle;
    return StabilityClass::Unstable;
}

EquilibriumReport equilibrium_report(const ModelParams& params) {
    const EconState eq = equilibrium(params);
    EquilibriumReport r;
    r.K0 = eq.K;
    r.E0 = eq.E;
    r.Y0 = production(params, eq);
    r.jacobian = jacobian_basic(params);
    const auto ev = eigen_basic(params);
    r.eigenvalues.assign(ev.begin(), ev.end());
    r.classification = classify(r.eigenvalues);
    return r;
}

EquilibriumReport controlled_equilibrium(const ModelParams& params, double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw InvalidTarget("consumption target p must lie in (0, 1)");
    const double s_r_star = 1.0 - params.s_k - p;
    if (!(s_r_star > 0.0))
        throw InvalidTarget("p >= 1 - s_k leaves no positive education share (s_r* = " +
                            std::to_string(s_r_star) + ")");

    ModelParams at_target = params;
    at_target.s_r = s_r_star;
    EquilibriumReport base = equilibrium_report(at_target);

    EquilibriumReport r;
    r.K0 = base.K0;
    r.E0 = base.E0;
    r.Y0 = base.Y0;
    r.s_r = s_r_star;
    r.jacobian = Matrix(3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            r.jacobian(i, k) = base.jacobian(i, k);
    r.jacobian(1, 2) = base.Y0;
    r.jacobian(2, 2) = -base.Y0;
    r.eigenvalues = base.eigenvalues;
    r.eigenvalues.emplace_back(-base.Y0, 0.0);
    std::stable_sort(r.eigenvalues.begin(), r.eigenvalues.end(),
                     [](const auto& a, const auto& b) { return a.real() > b.real(); });
    r.classification = classify(r.eigenvalues);
    return r;
}

std::optional<double> invariant_manifold(const ModelParams& p) {
    if (std::abs(p.delta_k - p.delta_r) < kDegeneracyThreshold)
        return p.s_k / p.s_r;
    return std::nullopt;
}

} // namespace capedu
