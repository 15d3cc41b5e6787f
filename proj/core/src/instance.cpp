#include "wdrjcc/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wdrjcc/error.hpp"

namespace wdrjcc {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].size() != m.cols())
      throw ModelError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(m.cols()));
    m.append_row(rows[i]);
  }
  return m;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && data_.empty()) cols_ = values.size();
  if (values.size() != cols_)
    throw ModelError("row length " + std::to_string(values.size()) + " does not match " +
                     std::to_string(cols_) + " columns");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

NormKind parse_norm(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "l1" || s == "1") return NormKind::kL1;
  if (s == "l2" || s == "2") return NormKind::kL2;
  if (s == "linf" || s == "inf" || s == "l_inf") return NormKind::kLinf;
  throw ParseError("unsupported norm '" + std::string(text) + "' (use l1, l2 or linf)");
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::kL1: return "l1";
    case NormKind::kL2: return "l2";
    case NormKind::kLinf: return "linf";
  }
  return "l2";
}

NormKind dual_kind(NormKind kind) {
  switch (kind) {
    case NormKind::kL1: return NormKind::kLinf;
    case NormKind::kLinf: return NormKind::kL1;
    case NormKind::kL2: return NormKind::kL2;
  }
  return NormKind::kL2;
}

double norm(std::span<const double> v, NormKind kind) {
  double acc = 0.0;
  switch (kind) {
    case NormKind::kL1:
      for (double x : v) acc += std::abs(x);
      return acc;
    case NormKind::kL2:
      for (double x : v) acc = std::hypot(acc, x);
      return acc;
    case NormKind::kLinf:
      for (double x : v) acc = std::max(acc, std::abs(x));
      return acc;
  }
  return acc;
}

double dual_norm(std::span<const double> v, NormKind kind) { return norm(v, dual_kind(kind)); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

void require_finite(std::span<const double> v, const std::string& what) {
  for (double x : v)
    if (!std::isfinite(x)) throw ModelError(what + " contains a non-finite entry");
}

}  // namespace

ScenarioSet::ScenarioSet(Matrix samples, Matrix holdout)
    : samples_(std::move(samples)), holdout_(std::move(holdout)) {
  if (samples_.rows() == 0) throw ModelError("scenario set needs at least one sample");
  if (samples_.cols() == 0) throw ModelError("scenarios must have at least one coordinate");
  require_finite(samples_.data(), "scenario matrix");
  if (!holdout_.empty()) {
    if (holdout_.cols() != samples_.cols())
      throw ModelError("holdout width " + std::to_string(holdout_.cols()) +
                       " differs from K = " + std::to_string(samples_.cols()));
    require_finite(holdout_.data(), "holdout matrix");
  }
}

SafetySystem::SafetySystem(std::vector<SafetyRow> rows, NormKind norm_kind,
                           std::vector<Bounds> x_bounds)
    : rows_(std::move(rows)), norm_(norm_kind), x_bounds_(std::move(x_bounds)) {
  if (rows_.empty()) throw ModelError("safety system needs at least one row");
  const std::size_t L = x_bounds_.size();
  const std::size_t K = rows_.front().b.size();
  if (K == 0) throw ModelError("safety rows need a nonempty b vector");
  for (std::size_t p = 0; p < rows_.size(); ++p) {
    const SafetyRow& r = rows_[p];
    const std::string tag = "safety row " + std::to_string(p);
    if (r.a.size() != L)
      throw ModelError(tag + ": a has " + std::to_string(r.a.size()) + " entries, expected " +
                       std::to_string(L));
    if (r.b.size() != K)
      throw ModelError(tag + ": b has " + std::to_string(r.b.size()) + " entries, expected " +
                       std::to_string(K));
    require_finite(r.a, tag + " a");
    require_finite(r.b, tag + " b");
    if (!std::isfinite(r.d)) throw ModelError(tag + ": d is not finite");
    const double dn = wdrjcc::dual_norm(r.b, norm_);
    if (dn < 1e-12) throw ModelError(tag + ": dual norm of b is below 1e-12");
    dual_norms_.push_back(dn);
  }
  for (std::size_t j = 0; j < L; ++j) {
    const auto [lo, hi] = x_bounds_[j];
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw ModelError("x bound " + std::to_string(j) + " is inverted or NaN");
  }
}

bool SafetySystem::bounded() const {
  return std::all_of(x_bounds_.begin(), x_bounds_.end(), [](const Bounds& b) {
    return std::isfinite(b.first) && std::isfinite(b.second);
  });
}

double SafetySystem::slack(std::size_t p, std::span<const double> x,
                           std::span<const double> xi) const {
  const SafetyRow& r = rows_[p];
  return dot(r.b, xi) + r.d - dot(r.a, x);
}

void AmbiguityConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ModelError("epsilon must lie in (0,1)");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ModelError("theta must be positive");
}

std::size_t AmbiguityConfig::k(std::size_t N) const {
  const double raw = std::floor(epsilon * static_cast<double>(N) + 1e-9);
  const auto k = static_cast<std::size_t>(std::max(0.0, raw));
  return std::min(k, N > 0 ? N - 1 : 0);
}

void check_compatible(const ScenarioSet& scen, const SafetySystem& sys) {
  if (scen.K() != sys.K())
    throw ModelError("scenarios have K = " + std::to_string(scen.K()) +
                     " but the safety system expects " + std::to_string(sys.K()));
}

std::size_t OrderData::total_below() const {
  std::size_t n = 0;
  for (const auto& b : below) n += b.size();
  return n;
}

OrderData order_data(const ScenarioSet& scen, const SafetySystem& sys,
                     const AmbiguityConfig& amb) {
  check_compatible(scen, sys);
  OrderData od;
  const std::size_t N = scen.N();
  od.k = amb.k(N);
  for (std::size_t p = 0; p < sys.P(); ++p) {
    std::vector<double> vals(N);
    for (std::size_t i = 0; i < N; ++i) vals[i] = dot(sys.row(p).b, scen.sample(i));
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t l, std::size_t r) { return vals[l] < vals[r]; });
    const double q = vals[idx[od.k]];
    std::vector<std::size_t> below;
    for (std::size_t i = 0; i < N; ++i)
      if (vals[i] < q) below.push_back(i);
    od.values.push_back(std::move(vals));
    od.order.push_back(std::move(idx));
    od.q.push_back(q);
    od.below.push_back(std::move(below));
  }
  return od;
}

double signed_distance(std::span<const double> x, std::span<const double> xi,
                       const SafetySystem& sys) {
  if (x.size() != sys.L() || xi.size() != sys.K())
    throw ModelError("distance: x or xi has the wrong dimension");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < sys.P(); ++p)
    best = std::min(best, sys.slack(p, x, xi) / sys.dual_norm(p));
  return best;
}

double distance(std::span<const double> x, std::span<const double> xi, const SafetySystem& sys) {
  return std::max(0.0, signed_distance(x, xi, sys));
}

double distance_hat(std::span<const double> x, std::span<const double> xi,
                    const SafetySystem& sys, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw ModelError("kappa must lie in [0,1]");
  if (kappa == 0.0) return 0.0;
  return kappa * signed_distance(x, xi, sys);
}

}  // namespace wdrjcc
