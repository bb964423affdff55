#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "brwlab/rng.hpp"

namespace brw {

struct Summary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_ = 0.0;
  double ci_low = 0.0;   // 95% normal interval
  double ci_high = 0.0;
};

Summary summarize(const std::vector<double>& xs);
double quantile(std::vector<double> xs, double q);  // type-7 linear interpolation

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares y = a + b x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
// Weighted least squares on (log x, log y); weights from relative errors via
// the delta method when `se` is provided. Points with y <= 0 are dropped.
LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>* se = nullptr);

// Pearson chi-square goodness of fit against expected counts; p-value from
// the regularized incomplete gamma.
double chi_square_pvalue(const std::vector<double>& observed, const std::vector<double>& expected);

// Two-sample Kolmogorov-Smirnov statistic and a permutation p-value.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_permutation_pvalue(const std::vector<double>& a, const std::vector<double>& b,
                             std::uint32_t permutations, Rng& rng);

// Total variation distance between two empirical frequency maps.
double total_variation(const std::map<std::string, std::uint64_t>& a,
                       const std::map<std::string, std::uint64_t>& b);

}  // namespace brw
