#include "ucblt/arms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace ucblt {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

bool finite(double x) { return std::isfinite(x); }

// sinh(x)/x and its second derivative, with series near 0 where the closed
// forms cancel.
double sinhc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

double sinhc_second_derivative(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return 1.0 / 3.0 + x2 / 10.0 + x2 * x2 / 168.0;
    }
    return std::sinh(x) / x - 2.0 * std::cosh(x) / (x * x) + 2.0 * std::sinh(x) / (x * x * x);
}

void check_mgf_domain(const DistributionSpec& dist, double u) {
    if (std::isnan(u)) throw std::domain_error("mgf: u is NaN");
    const bool ok = std::visit(overloaded{
                                   [&](const Exponential& e) { return u < e.lambda; },
                                   [&](const Laplace& l) { return std::abs(u) * l.b < 1.0; },
                                   [](const auto&) { return true; },
                               },
                               dist.family());
    if (!ok) {
        throw std::domain_error("mgf: u = " + std::to_string(u) +
                                " is outside the MGF existence region of " +
                                std::string(dist.family_name()));
    }
}

// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
double golden_section_max(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 200 && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return std::max({fc, fd, f(a), f(b)});
}

double numeric_zeta(const DistributionSpec& dist, double u0) {
    auto m2 = [&](double u) { return mgf_second_derivative(dist, u); };
    const std::size_t n = kZetaGridPoints;
    const double step = 2.0 * u0 / static_cast<double>(n - 1);
    std::size_t argmax = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (i + 1 == n) ? u0 : -u0 + step * static_cast<double>(i);
        const double v = m2(u);
        if (v > best) {
            best = v;
            argmax = i;
        }
    }
    const double lo = argmax == 0 ? -u0 : -u0 + step * static_cast<double>(argmax - 1);
    const double hi = argmax + 1 >= n ? u0 : std::min(u0, -u0 + step * static_cast<double>(argmax + 1));
    best = std::max(best, golden_section_max(m2, lo, hi));
    return kZetaSafetyFactor * best;
}

}  // namespace

MgfRadius MgfRadius::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("u0 must be a positive finite number or infinity");
    }
    MgfRadius r;
    r.infinite_ = false;
    r.value_ = value;
    return r;
}

double MgfRadius::value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

DistributionSpec::DistributionSpec(Family family) : family_(family) {
    std::visit(overloaded{
                   [](const PointMass& d) { require(finite(d.value), "PointMass: value must be finite"); },
                   [](const Bernoulli& d) { require(d.p >= 0.0 && d.p <= 1.0, "Bernoulli: require 0 <= p <= 1"); },
                   [](const UniformBounded& d) {
                       require(finite(d.lo) && finite(d.hi) && d.lo < d.hi, "UniformBounded: require lo < hi");
                   },
                   [](const Gaussian& d) {
                       require(finite(d.mu), "Gaussian: mu must be finite");
                       require(d.sigma2 > 0.0 && finite(d.sigma2), "Gaussian: require sigma2 > 0");
                   },
                   [](const Exponential& d) {
                       require(d.lambda > 0.0 && finite(d.lambda), "Exponential: require lambda > 0");
                   },
                   [](const Poisson& d) {
                       require(d.lambda > 0.0 && finite(d.lambda), "Poisson: require lambda > 0");
                   },
                   [](const Laplace& d) {
                       require(finite(d.mu), "Laplace: mu must be finite");
                       require(d.b > 0.0 && finite(d.b), "Laplace: require b > 0");
                   },
               },
               family_);
}

std::string_view DistributionSpec::family_name() const noexcept {
    return std::visit(overloaded{
                          [](const PointMass&) { return std::string_view{"PointMass"}; },
                          [](const Bernoulli&) { return std::string_view{"Bernoulli"}; },
                          [](const UniformBounded&) { return std::string_view{"UniformBounded"}; },
                          [](const Gaussian&) { return std::string_view{"Gaussian"}; },
                          [](const Exponential&) { return std::string_view{"Exponential"}; },
                          [](const Poisson&) { return std::string_view{"Poisson"}; },
                          [](const Laplace&) { return std::string_view{"Laplace"}; },
                      },
                      family_);
}

double DistributionSpec::mean() const noexcept {
    return std::visit(overloaded{
                          [](const PointMass& d) { return d.value; },
                          [](const Bernoulli& d) { return d.p; },
                          [](const UniformBounded& d) { return 0.5 * (d.lo + d.hi); },
                          [](const Gaussian& d) { return d.mu; },
                          [](const Exponential& d) { return 1.0 / d.lambda; },
                          [](const Poisson& d) { return d.lambda; },
                          [](const Laplace& d) { return d.mu; },
                      },
                      family_);
}

double DistributionSpec::variance() const noexcept {
    return std::visit(overloaded{
                          [](const PointMass&) { return 0.0; },
                          [](const Bernoulli& d) { return d.p * (1.0 - d.p); },
                          [](const UniformBounded& d) { return (d.hi - d.lo) * (d.hi - d.lo) / 12.0; },
                          [](const Gaussian& d) { return d.sigma2; },
                          [](const Exponential& d) { return 1.0 / (d.lambda * d.lambda); },
                          [](const Poisson& d) { return d.lambda; },
                          [](const Laplace& d) { return 2.0 * d.b * d.b; },
                      },
                      family_);
}

bool DistributionSpec::is_sub_gaussian() const noexcept {
    return std::holds_alternative<PointMass>(family_) || std::holds_alternative<Bernoulli>(family_) ||
           std::holds_alternative<UniformBounded>(family_) || std::holds_alternative<Gaussian>(family_);
}

MgfRadius DistributionSpec::mgf_boundary() const noexcept {
    if (const auto* e = std::get_if<Exponential>(&family_)) return MgfRadius::finite(e->lambda);
    if (const auto* l = std::get_if<Laplace>(&family_)) return MgfRadius::finite(1.0 / l->b);
    return MgfRadius::infinite();
}

bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
    if (a.family_.index() != b.family_.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b.family_);
            if constexpr (std::is_same_v<T, PointMass>) return lhs.value == rhs.value;
            else if constexpr (std::is_same_v<T, Bernoulli>) return lhs.p == rhs.p;
            else if constexpr (std::is_same_v<T, UniformBounded>) return lhs.lo == rhs.lo && lhs.hi == rhs.hi;
            else if constexpr (std::is_same_v<T, Gaussian>) return lhs.mu == rhs.mu && lhs.sigma2 == rhs.sigma2;
            else if constexpr (std::is_same_v<T, Laplace>) return lhs.mu == rhs.mu && lhs.b == rhs.b;
            else return lhs.lambda == rhs.lambda;
        },
        a.family_);
}

double sample(const DistributionSpec& dist, Rng& rng) {
    return std::visit(overloaded{
                          [](const PointMass& d) { return d.value; },
                          [&](const Bernoulli& d) { return std::bernoulli_distribution{d.p}(rng) ? 1.0 : 0.0; },
                          [&](const UniformBounded& d) { return std::uniform_real_distribution<double>{d.lo, d.hi}(rng); },
                          [&](const Gaussian& d) {
                              return std::normal_distribution<double>{d.mu, std::sqrt(d.sigma2)}(rng);
                          },
                          [&](const Exponential& d) { return std::exponential_distribution<double>{d.lambda}(rng); },
                          [&](const Poisson& d) {
                              return static_cast<double>(std::poisson_distribution<long long>{d.lambda}(rng));
                          },
                          [&](const Laplace& d) {
                              std::exponential_distribution<double> unit{1.0};
                              const double e1 = unit(rng);
                              const double e2 = unit(rng);
                              return d.mu + d.b * (e1 - e2);
                          },
                      },
                      dist.family());
}

double mgf(const DistributionSpec& dist, double u) {
    check_mgf_domain(dist, u);
    if (u == 0.0) return 1.0;
    return std::visit(overloaded{
                          [](const PointMass&) { return 1.0; },
                          [&](const Bernoulli& d) {
                              return (1.0 - d.p) * std::exp(-u * d.p) + d.p * std::exp(u * (1.0 - d.p));
                          },
                          [&](const UniformBounded& d) { return sinhc(0.5 * (d.hi - d.lo) * u); },
                          [&](const Gaussian& d) { return std::exp(0.5 * d.sigma2 * u * u); },
                          [&](const Exponential& d) { return std::exp(-u / d.lambda) * d.lambda / (d.lambda - u); },
                          [&](const Poisson& d) { return std::exp(d.lambda * (std::expm1(u) - u)); },
                          [&](const Laplace& d) { return 1.0 / (1.0 - d.b * d.b * u * u); },
                      },
                      dist.family());
}

double mgf_second_derivative(const DistributionSpec& dist, double u) {
    check_mgf_domain(dist, u);
    return std::visit(overloaded{
                          [](const PointMass&) { return 0.0; },
                          [&](const Bernoulli& d) {
                              const double q = 1.0 - d.p;
                              return q * d.p * d.p * std::exp(-u * d.p) + d.p * q * q * std::exp(u * q);
                          },
                          [&](const UniformBounded& d) {
                              const double h = 0.5 * (d.hi - d.lo);
                              return h * h * sinhc_second_derivative(h * u);
                          },
                          [&](const Gaussian& d) {
                              const double s = d.sigma2;
                              return (s + s * s * u * u) * std::exp(0.5 * s * u * u);
                          },
                          [&](const Exponential& d) {
                              const double lam = d.lambda;
                              const double m = 1.0 / lam;
                              const double r = lam - u;
                              return std::exp(-u * m) *
                                     (2.0 * lam / (r * r * r) - 2.0 * m * lam / (r * r) + m * m * lam / r);
                          },
                          [&](const Poisson& d) {
                              const double em1 = std::expm1(u);
                              const double m = std::exp(d.lambda * (em1 - u));
                              return (d.lambda * std::exp(u) + d.lambda * d.lambda * em1 * em1) * m;
                          },
                          [&](const Laplace& d) {
                              const double s = d.b * d.b * u * u;
                              const double den = 1.0 - s;
                              return 2.0 * d.b * d.b * (1.0 + 3.0 * s) / (den * den * den);
                          },
                      },
                      dist.family());
}

MgfRadius default_u0(const DistributionSpec& dist) {
    return std::visit(overloaded{
                          [](const Exponential& d) { return MgfRadius::finite(0.5 * d.lambda); },
                          [](const Laplace& d) { return MgfRadius::finite(0.5 / d.b); },
                          [](const Poisson&) { return MgfRadius::finite(1.0); },
                          [](const auto&) { return MgfRadius::infinite(); },
                      },
                      dist.family());
}

TailParams derive_tail_params(const DistributionSpec& dist, MgfRadius u0_request) {
    const std::string name{dist.family_name()};
    if (u0_request.is_infinite() && !dist.is_sub_gaussian()) {
        throw std::domain_error(name + " is not sub-Gaussian; u0 must be finite");
    }
    const MgfRadius boundary = dist.mgf_boundary();
    if (!u0_request.is_infinite() && !boundary.is_infinite() && u0_request.value() >= boundary.value()) {
        throw std::domain_error("u0 = " + std::to_string(u0_request.value()) +
                                " reaches the MGF existence boundary " + std::to_string(boundary.value()) +
                                " of " + name);
    }

    const double zeta = std::visit(
        overloaded{
            [](const PointMass&) { return kMinZeta; },
            [](const Bernoulli&) { return 0.25; },
            [](const UniformBounded& d) { return (d.hi - d.lo) * (d.hi - d.lo) / 4.0; },
            [](const Gaussian& d) { return d.sigma2; },
            [&](const auto&) { return numeric_zeta(dist, u0_request.value()); },
        },
        dist.family());
    return TailParams{u0_request, zeta};
}

ArmModel::ArmModel(DistributionSpec dist, std::optional<MgfRadius> u0_request)
    : dist_(dist),
      mean_(dist_.mean()),
      tail_(derive_tail_params(dist_, u0_request.value_or(default_u0(dist_)))) {}

ArmSet::ArmSet(std::vector<ArmModel> arms) : arms_(std::move(arms)) {
    if (arms_.empty()) throw std::invalid_argument("an arm set needs at least one arm");
    for (std::size_t i = 1; i < arms_.size(); ++i) {
        if (arms_[i].mean() > arms_[best_].mean()) best_ = i;
    }
    const double top = arms_[best_].mean();
    gaps_.reserve(arms_.size());
    for (const auto& arm : arms_) gaps_.push_back(top - arm.mean());
}

std::vector<double> ArmSet::positive_gaps() const {
    std::vector<double> out;
    for (double g : gaps_) {
        if (g > 0.0) out.push_back(g);
    }
    return out;
}

TailParams ArmSet::common_tail() const {
    TailParams common = arms_.front().tail();
    for (const auto& arm : arms_) {
        common.zeta = std::max(common.zeta, arm.tail().zeta);
        const MgfRadius& u0 = arm.tail().u0;
        if (!u0.is_infinite() && (common.u0.is_infinite() || u0.value() < common.u0.value())) common.u0 = u0;
    }
    return common;
}

}  // namespace ucblt
