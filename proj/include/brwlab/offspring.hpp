#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "brwlab/errors.hpp"
#include "brwlab/rng.hpp"

namespace brw {

// Critical offspring distribution (mean exactly 1, finite variance).
// Presets are laws with exponential moments; a custom finite-support pmf is
// accepted for fixtures and experiments with bounded laws.
class OffspringLaw {
 public:
  enum class Kind { GeometricHalf, PoissonOne, Finite };

  static OffspringLaw geometric_half();
  static OffspringLaw poisson_one();
  static OffspringLaw binary02();
  // pmf[k] = P[Z=k]; must be critical (mean 1 within 1e-12).
  static OffspringLaw finite(std::vector<double> pmf, std::string name);
  static OffspringLaw from_name(const std::string& name);

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  double pmf(std::uint64_t k) const;
  double variance() const { return variance_; }
  // gcd of differences of support points; size conditioning lives on this lattice
  std::uint64_t support_period() const { return period_; }
  std::uint64_t min_support() const { return min_support_; }
  // true when some plane tree with n vertices has positive probability
  bool feasible_size(std::uint64_t n) const;

  std::uint64_t sample(Rng& rng) const;
  // Degree sequence (Z_1..Z_n) conditioned on sum = n-1, i.e. a Lukasiewicz
  // bridge. O(n) for the presets, rejection on the sum otherwise.
  std::vector<std::uint32_t> sample_conditioned_degrees(std::uint64_t n, Rng& rng) const;

  // Size-biased law P[Z~=k] = k p_k (normalized because the law is critical).
  double size_biased_pmf(std::uint64_t k) const { return double(k) * pmf(k); }
  std::uint64_t sample_size_biased(Rng& rng) const;
  std::uint64_t sample_size_biased_minus_one(Rng& rng) const {
    return sample_size_biased(rng) - 1;
  }
  double size_biased_mean() const;  // E[Z~] = E[Z^2]

 private:
  OffspringLaw() = default;
  void validate() const;

  Kind kind_ = Kind::Finite;
  std::string name_;
  double variance_ = 0.0;
  std::uint64_t period_ = 1;
  std::uint64_t min_support_ = 0;
  std::vector<double> pmf_;      // finite kind only
  std::vector<double> cdf_;      // finite kind only
  std::vector<double> sb_cdf_;   // finite kind: cdf of k*p_k
};

inline double OffspringLaw::pmf(std::uint64_t k) const {
  switch (kind_) {
    case Kind::GeometricHalf:
      return k < 63 ? std::ldexp(1.0, -static_cast<int>(k) - 1) : std::ldexp(1.0, -63);
    case Kind::PoissonOne: {
      double v = std::exp(-1.0);
      for (std::uint64_t i = 1; i <= k; ++i) v /= double(i);
      return v;
    }
    case Kind::Finite:
      return k < pmf_.size() ? pmf_[k] : 0.0;
  }
  return 0.0;
}

inline std::uint64_t OffspringLaw::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::GeometricHalf: {
      // number of trailing zero bits of a uniform word is geometric(1/2)
      std::uint64_t u = rng();
      std::uint64_t k = 0;
      while (u == 0) {  // probability 2^-64 per draw
        k += 64;
        u = rng();
      }
      return k + static_cast<std::uint64_t>(__builtin_ctzll(u));
    }
    case Kind::PoissonOne: {
      // Knuth product method, lambda = 1
      double limit = std::exp(-1.0);
      double prod = uniform01(rng);
      std::uint64_t k = 0;
      while (prod > limit) {
        prod *= uniform01(rng);
        ++k;
      }
      return k;
    }
    case Kind::Finite: {
      double u = uniform01(rng);
      for (std::size_t k = 0; k < cdf_.size(); ++k)
        if (u < cdf_[k]) return k;
      return cdf_.size() - 1;
    }
  }
  return 0;
}

inline std::uint64_t OffspringLaw::sample_size_biased(Rng& rng) const {
  switch (kind_) {
    case Kind::GeometricHalf:
      // Z~ - 1 is the sum of two independent geometric(1/2) variables
      return sample(rng) + sample(rng) + 1;
    case Kind::PoissonOne:
      // Z~ - 1 ~ Poisson(1)
      return sample(rng) + 1;
    case Kind::Finite: {
      double u = uniform01(rng);
      for (std::size_t k = 0; k < sb_cdf_.size(); ++k)
        if (u < sb_cdf_[k]) return k;
      return sb_cdf_.size() - 1;
    }
  }
  return 1;
}

inline double OffspringLaw::size_biased_mean() const {
  // E[Z~] = E[Z^2] = var + 1 for a critical law
  return variance_ + 1.0;
}

inline void OffspringLaw::validate() const {
  if (kind_ != Kind::Finite) return;
  double sum = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    if (pmf_[k] < 0.0) throw ConfigError("offspring pmf has a negative entry");
    sum += pmf_[k];
    mean += double(k) * pmf_[k];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("offspring pmf does not sum to 1");
  if (std::abs(mean - 1.0) > 1e-12) throw ConfigError("offspring law is not critical");
  if (pmf_.size() > 1 && pmf_[1] >= 1.0) throw ConfigError("degenerate law Z=1");
}

inline OffspringLaw OffspringLaw::geometric_half() {
  OffspringLaw law;
  law.kind_ = Kind::GeometricHalf;
  law.name_ = "geometric(1/2)";
  law.variance_ = 2.0;
  law.period_ = 1;
  law.min_support_ = 0;
  return law;
}

inline OffspringLaw OffspringLaw::poisson_one() {
  OffspringLaw law;
  law.kind_ = Kind::PoissonOne;
  law.name_ = "poisson(1)";
  law.variance_ = 1.0;
  law.period_ = 1;
  law.min_support_ = 0;
  return law;
}

inline OffspringLaw OffspringLaw::binary02() {
  OffspringLaw law = finite({0.5, 0.0, 0.5}, "binary{0,2}");
  return law;
}

inline OffspringLaw OffspringLaw::finite(std::vector<double> pmf, std::string name) {
  OffspringLaw law;
  law.kind_ = Kind::Finite;
  law.name_ = std::move(name);
  law.pmf_ = std::move(pmf);
  law.validate();
  double mean2 = 0.0;
  for (std::size_t k = 0; k < law.pmf_.size(); ++k) mean2 += double(k * k) * law.pmf_[k];
  law.variance_ = mean2 - 1.0;
  law.min_support_ = 0;
  while (law.min_support_ < law.pmf_.size() && law.pmf_[law.min_support_] == 0.0)
    ++law.min_support_;
  std::uint64_t g = 0;
  for (std::size_t k = law.min_support_; k < law.pmf_.size(); ++k)
    if (law.pmf_[k] > 0.0) g = std::gcd(g, k - law.min_support_);
  law.period_ = g == 0 ? 1 : g;
  law.cdf_.resize(law.pmf_.size());
  law.sb_cdf_.resize(law.pmf_.size());
  double c = 0.0, sc = 0.0;
  for (std::size_t k = 0; k < law.pmf_.size(); ++k) {
    c += law.pmf_[k];
    sc += double(k) * law.pmf_[k];
    law.cdf_[k] = c;
    law.sb_cdf_[k] = sc;
  }
  return law;
}

inline OffspringLaw OffspringLaw::from_name(const std::string& name) {
  if (name == "geometric(1/2)" || name == "geometric") return geometric_half();
  if (name == "poisson(1)" || name == "poisson") return poisson_one();
  if (name == "binary{0,2}" || name == "binary") return binary02();
  throw ConfigError("unknown offspring law preset: " + name);
}

inline bool OffspringLaw::feasible_size(std::uint64_t n) const {
  if (n == 0) return false;
  if (n == 1) return pmf(0) > 0.0;
  // need z_1..z_n in the support with sum n-1
  std::uint64_t base = n * min_support_;
  if (base > n - 1) return false;
  if ((n - 1 - base) % period_ != 0) return false;
  if (kind_ == Kind::Finite) {
    std::uint64_t max_sup = pmf_.size() - 1;
    while (max_sup > 0 && pmf_[max_sup] == 0.0) --max_sup;
    if (n * max_sup < n - 1) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> OffspringLaw::sample_conditioned_degrees(
    std::uint64_t n, Rng& rng) const {
  if (!feasible_size(n))
    throw IncompatibleSize("no tree of size " + std::to_string(n) + " under " + name_);
  std::vector<std::uint32_t> z(n, 0);
  if (n == 1) return z;
  switch (kind_) {
    case Kind::GeometricHalf: {
      // stars-and-bars: geometric(1/2) conditioned on the sum is a uniform
      // composition of n-1 into n parts
      std::uint64_t slots = 2 * n - 2;
      std::vector<std::uint8_t> star(slots, 0);
      std::uint64_t stars = n - 1;
      for (std::uint64_t i = 0; i < slots; ++i) {
        // hypergeometric-style sequential selection keeps it one pass
        if (uniform_below(rng, slots - i) < stars) {
          star[i] = 1;
          --stars;
        }
      }
      std::uint64_t cell = 0;
      for (std::uint64_t i = 0; i < slots; ++i) {
        if (star[i])
          ++z[cell];
        else
          ++cell;
      }
      break;
    }
    case Kind::PoissonOne: {
      // Poisson conditioned on the sum is multinomial over uniform cells
      for (std::uint64_t i = 0; i + 1 < n; ++i) ++z[uniform_below(rng, n)];
      break;
    }
    case Kind::Finite: {
      if (name_ == "binary{0,2}") {
        std::uint64_t twos = (n - 1) / 2;
        for (std::uint64_t i = 0; i < n; ++i) {
          if (uniform_below(rng, n - i) < twos) {
            z[i] = 2;
            --twos;
          }
        }
        break;
      }
      // generic bounded law: rejection on the bridge sum, ~c*sqrt(n) attempts
      const std::uint64_t budget = 2000 + 400 * static_cast<std::uint64_t>(std::sqrt(double(n)));
      for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
        std::uint64_t sum = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
          z[i] = static_cast<std::uint32_t>(sample(rng));
          sum += z[i];
        }
        if (sum == n - 1) return z;
      }
      throw RetryExhausted("conditioned degree-sequence rejection budget exhausted");
    }
  }
  return z;
}

}  // namespace brw
