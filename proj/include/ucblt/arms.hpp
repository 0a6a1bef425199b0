#pragma once

// Reward distributions, their centered moment-generating functions, and the
// light-tail certificate (u0, zeta) that the index policy and the bounds use.

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "ucblt/rng.hpp"

namespace ucblt {

/// Positive extended real used for the MGF half-width u0. Infinity is a tag,
/// never a large float, so branch tests against zeta*u0 stay exact.
class MgfRadius {
public:
    static constexpr MgfRadius infinite() noexcept { return MgfRadius{}; }
    /// Throws std::invalid_argument unless 0 < value < inf.
    static MgfRadius finite(double value);

    constexpr bool is_infinite() const noexcept { return infinite_; }
    /// +inf for the infinite tag.
    double value() const noexcept;

    friend bool operator==(const MgfRadius&, const MgfRadius&) = default;

private:
    constexpr MgfRadius() noexcept = default;
    bool infinite_ = true;
    double value_ = 0.0;
};

struct PointMass { double value; };
struct Bernoulli { double p; };
struct UniformBounded { double lo; double hi; };
struct Gaussian { double mu; double sigma2; };
struct Exponential { double lambda; };
struct Poisson { double lambda; };
struct Laplace { double mu; double b; };

class DistributionSpec {
public:
    using Family = std::variant<PointMass, Bernoulli, UniformBounded, Gaussian, Exponential,
                                Poisson, Laplace>;

    /// Validates family parameters; throws std::invalid_argument on violation.
    DistributionSpec(Family family);  // NOLINT(google-explicit-constructor)

    const Family& family() const noexcept { return family_; }
    std::string_view family_name() const noexcept;

    double mean() const noexcept;
    double variance() const noexcept;

    /// True when Eq. M(u) <= exp(zeta u^2 / 2) can hold for every real u.
    bool is_sub_gaussian() const noexcept;

    /// Supremum of |u| for which the MGF is finite on [-|u|, |u|]; infinite for
    /// families whose MGF exists everywhere.
    MgfRadius mgf_boundary() const noexcept;

    friend bool operator==(const DistributionSpec& a, const DistributionSpec& b);

private:
    Family family_;
};

/// Light-tail certificate: M(u) <= exp(zeta u^2 / 2) for all |u| <= u0.
struct TailParams {
    MgfRadius u0;
    double zeta;
};

/// One draw. A pure function of (dist, rng state).
double sample(const DistributionSpec& dist, Rng& rng);

/// MGF of the centered variable X - E[X]. Throws std::domain_error outside the
/// existence region.
double mgf(const DistributionSpec& dist, double u);

/// Closed-form second derivative of the centered MGF.
double mgf_second_derivative(const DistributionSpec& dist, double u);

/// u0 used when the caller does not request one: infinity for sub-Gaussian
/// families, half the distance to the boundary for Exponential and Laplace,
/// and 1 for Poisson.
MgfRadius default_u0(const DistributionSpec& dist);

/// Derives (u0, zeta). Closed form for PointMass, Bernoulli, UniformBounded and
/// Gaussian; otherwise 1.01 times a numeric supremum of the centered M'' on
/// [-u0, u0]. Throws std::domain_error if u0_request is not strictly inside the
/// existence region or is infinite for a non-sub-Gaussian family.
TailParams derive_tail_params(const DistributionSpec& dist, MgfRadius u0_request);

inline constexpr double kZetaSafetyFactor = 1.01;
inline constexpr std::size_t kZetaGridPoints = 4097;
/// Lower floor for zeta, reached only by zero-variance distributions.
inline constexpr double kMinZeta = 1e-12;

class ArmModel {
public:
    /// Derives the tail certificate at u0_request, or at default_u0(dist).
    explicit ArmModel(DistributionSpec dist, std::optional<MgfRadius> u0_request = std::nullopt);

    const DistributionSpec& dist() const noexcept { return dist_; }
    double mean() const noexcept { return mean_; }
    const TailParams& tail() const noexcept { return tail_; }

private:
    DistributionSpec dist_;
    double mean_;
    TailParams tail_;
};

inline double sample(const ArmModel& arm, Rng& rng) { return sample(arm.dist(), rng); }
inline double mean(const ArmModel& arm) noexcept { return arm.mean(); }

/// Ordered arms with the best-mean index (lowest index on ties) and the
/// per-arm gaps to it. Indices are 0-based.
class ArmSet {
public:
    /// Throws std::invalid_argument when empty.
    explicit ArmSet(std::vector<ArmModel> arms);

    std::size_t size() const noexcept { return arms_.size(); }
    const std::vector<ArmModel>& arms() const noexcept { return arms_; }
    const ArmModel& operator[](std::size_t i) const { return arms_[i]; }
    std::size_t best() const noexcept { return best_; }
    const std::vector<double>& gaps() const noexcept { return gaps_; }

    /// Gaps of the strictly suboptimal arms, in arm order.
    std::vector<double> positive_gaps() const;

    /// Common certificate valid for every arm: max zeta over min u0.
    TailParams common_tail() const;

private:
    std::vector<ArmModel> arms_;
    std::size_t best_ = 0;
    std::vector<double> gaps_;
};

inline const std::vector<double>& gaps(const ArmSet& set) noexcept { return set.gaps(); }

}  // namespace ucblt
