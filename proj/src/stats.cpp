#include "brwlab/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "brwlab/errors.hpp"

namespace brw {

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / double(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.stddev = xs.size() > 1 ? std::sqrt(ss / double(xs.size() - 1)) : 0.0;
  s.stderr_ = s.stddev / std::sqrt(double(xs.size()));
  s.ci_low = s.mean - 1.959963984540054 * s.stderr_;
  s.ci_high = s.mean + 1.959963984540054 * s.stderr_;
  return s;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw Error("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  double pos = q * double(xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= xs.size()) return xs.back();
  double frac = pos - double(lo);
  return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("linear fit needs two points");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0, ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  if (x.size() > 2 && denom > 0)
    f.slope_stderr = std::sqrt(ss_res / double(x.size() - 2) * n / denom);
  return f;
}

LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>* se) {
  std::vector<double> lx, ly, w;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
    w.push_back(se ? (y[i] / std::max((*se)[i], 1e-300)) * (y[i] / std::max((*se)[i], 1e-300))
                   : 1.0);
  }
  if (lx.size() < 2) throw Error("log-log fit needs two positive points");
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sw += w[i];
    sx += w[i] * lx[i];
    sy += w[i] * ly[i];
    sxx += w[i] * lx[i] * lx[i];
    sxy += w[i] * lx[i] * ly[i];
  }
  double denom = sw * sxx - sx * sx;
  LinearFit f;
  f.slope = (sw * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / sw;
  double ss_res = 0.0, ss_tot = 0.0, ybar = sy / sw;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double r = ly[i] - (f.intercept + f.slope * lx[i]);
    ss_res += w[i] * r * r;
    ss_tot += w[i] * (ly[i] - ybar) * (ly[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  if (lx.size() > 2 && denom > 0)
    f.slope_stderr = std::sqrt(std::max(ss_res, 0.0) / double(lx.size() - 2) * sw / denom);
  return f;
}

double chi_square_pvalue(const std::vector<double>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw Error("chi-square inputs mismatch");
  double stat = 0.0;
  std::size_t dof = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) continue;
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    ++dof;
  }
  if (dof < 2) throw Error("chi-square needs two cells");
  return boost::math::gamma_q(double(dof - 1) / 2.0, stat / 2.0);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

double ks_permutation_pvalue(const std::vector<double>& a, const std::vector<double>& b,
                             std::uint32_t permutations, Rng& rng) {
  double observed = ks_statistic(a, b);
  std::vector<double> pool(a);
  pool.insert(pool.end(), b.begin(), b.end());
  std::uint32_t extreme = 0;
  for (std::uint32_t p = 0; p < permutations; ++p) {
    for (std::size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[uniform_below(rng, i)]);
    std::vector<double> pa(pool.begin(), pool.begin() + a.size());
    std::vector<double> pb(pool.begin() + a.size(), pool.end());
    if (ks_statistic(std::move(pa), std::move(pb)) >= observed) ++extreme;
  }
  return double(extreme + 1) / double(permutations + 1);
}

double total_variation(const std::map<std::string, std::uint64_t>& a,
                       const std::map<std::string, std::uint64_t>& b) {
  double na = 0, nb = 0;
  for (auto& [k, v] : a) na += double(v);
  for (auto& [k, v] : b) nb += double(v);
  if (na == 0 || nb == 0) throw Error("total variation of empty distribution");
  double tv = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      tv += double(ia->second) / na;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      tv += double(ib->second) / nb;
      ++ib;
    } else {
      tv += std::abs(double(ia->second) / na - double(ib->second) / nb);
      ++ia;
      ++ib;
    }
  }
  return tv / 2.0;
}

}  // namespace brw
