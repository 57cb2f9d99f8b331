#pragma once

#include "capedu/model.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace capedu {

/// Below this |alpha + beta - 1| or |delta_k - delta_r| the case is degenerate.
inline constexpr double kDegeneracyThreshold = 1e-12;

/// Small dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t dim() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    double trace() const;
    /// Defined for dimension 2 and 3.
    double determinant() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

enum class StabilityClass { StableNode, StableFocus, Saddle, Unstable, Degenerate };

std::string_view to_string(StabilityClass c);

struct EquilibriumReport {
    double K0 = 0.0;
    double E0 = 0.0;
    double Y0 = 0.0;
    std::optional<double> s_r; ///< controlled systems only: s_r* = 1 - s_k - p
    Matrix jacobian;
    std::vector<std::complex<double>> eigenvalues;
    StabilityClass classification = StabilityClass::Degenerate;
};

/**
 * Positive critical point of the basic system.
 *
 * Taking logs of the two nullcline conditions gives a linear system in
 * (ln E, ln K) with determinant alpha + beta - 1, solved in closed form.
 * Throws StructurallyUnstable when alpha + beta is within 1e-12 of 1, and
 * DomainError when s_k = 0 (capital then decays to zero).
 */
EconState equilibrium(const ModelParams& params);

/// Linearisation at the critical point, state order (K, E).
Matrix jacobian_basic(const ModelParams& params);

/// Roots of lambda^2 - tr lambda + det = 0, ordered by decreasing real part.
std::array<std::complex<double>, 2> eigen_basic(const ModelParams& params);

StabilityClass classify(std::span<const std::complex<double>> eigenvalues);

/// Full report for the basic 2-D system.
EquilibriumReport equilibrium_report(const ModelParams& params);

/// 3-D equilibrium of the consumption-controlled system; the Jacobian is
/// block upper-triangular so the spectrum is the 2-D one at s_r* plus -Y0.
/// Throws InvalidTarget unless 0 < p and s_r* = 1 - s_k - p > 0.
EquilibriumReport controlled_equilibrium(const ModelParams& params, double p);

/// Slope s_k/s_r of the invariant line K = (s_k/s_r) E, present only when
/// delta_k == delta_r.
std::optional<double> invariant_manifold(const ModelParams& params);

} // namespace capedu
