#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wdrjcc {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  /// Throws ModelError when the rows are ragged.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] const std::vector<double>& data() const { return data_; }

  /// Appends a row; the first row fixes the column count.
  void append_row(std::span<const double> values);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class NormKind { kL1, kL2, kLinf };

/// Accepts "l1", "l2", "linf" (any case) and "1", "2", "inf".
[[nodiscard]] NormKind parse_norm(std::string_view text);
[[nodiscard]] std::string_view to_string(NormKind kind);
[[nodiscard]] NormKind dual_kind(NormKind kind);

[[nodiscard]] double norm(std::span<const double> v, NormKind kind);
/// Dual norm: L1 <-> Linf, L2 <-> L2.
[[nodiscard]] double dual_norm(std::span<const double> v, NormKind kind);

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);

/// Training samples xi_1..xi_N (rows) and an optional holdout set.
class ScenarioSet {
 public:
  ScenarioSet() = default;
  /// Throws ModelError when N = 0, entries are not finite or the holdout
  /// width differs from K.
  explicit ScenarioSet(Matrix samples, Matrix holdout = {});

  [[nodiscard]] std::size_t N() const { return samples_.rows(); }
  [[nodiscard]] std::size_t K() const { return samples_.cols(); }
  [[nodiscard]] const Matrix& samples() const { return samples_; }
  [[nodiscard]] const Matrix& holdout() const { return holdout_; }
  [[nodiscard]] std::span<const double> sample(std::size_t i) const { return samples_.row(i); }

 private:
  Matrix samples_;
  Matrix holdout_;
};

/// One safety row a^T x <= b^T xi + d.
struct SafetyRow {
  std::vector<double> a;
  std::vector<double> b;
  double d = 0.0;
};

using Bounds = std::pair<double, double>;

class SafetySystem {
 public:
  SafetySystem() = default;
  /// Throws ModelError on empty input, mismatched lengths, non-finite data,
  /// inverted bounds or a row with dual norm of b below 1e-12.
  SafetySystem(std::vector<SafetyRow> rows, NormKind norm, std::vector<Bounds> x_bounds);

  [[nodiscard]] std::size_t P() const { return rows_.size(); }
  [[nodiscard]] std::size_t L() const { return x_bounds_.size(); }
  [[nodiscard]] std::size_t K() const { return rows_.front().b.size(); }
  [[nodiscard]] const SafetyRow& row(std::size_t p) const { return rows_[p]; }
  [[nodiscard]] const std::vector<SafetyRow>& rows() const { return rows_; }
  [[nodiscard]] NormKind norm() const { return norm_; }
  [[nodiscard]] double dual_norm(std::size_t p) const { return dual_norms_[p]; }
  [[nodiscard]] const std::vector<double>& dual_norms() const { return dual_norms_; }
  [[nodiscard]] const std::vector<Bounds>& x_bounds() const { return x_bounds_; }
  [[nodiscard]] bool bounded() const;

  /// b_p^T xi + d_p - a_p^T x.
  [[nodiscard]] double slack(std::size_t p, std::span<const double> x,
                             std::span<const double> xi) const;

 private:
  std::vector<SafetyRow> rows_;
  NormKind norm_ = NormKind::kL2;
  std::vector<double> dual_norms_;
  std::vector<Bounds> x_bounds_;
};

/// Risk level and Wasserstein radius.
struct AmbiguityConfig {
  double epsilon = 0.05;
  double theta = 0.1;

  /// Throws ModelError unless 0 < epsilon < 1 and theta > 0.
  void validate() const;
  /// floor(epsilon * N), guarded against epsilon * N landing just below an
  /// integer in floating point.
  [[nodiscard]] std::size_t k(std::size_t N) const;
};

/// Throws ModelError when the scenario width differs from the system's K.
void check_compatible(const ScenarioSet& scen, const SafetySystem& sys);

/// Per-row order statistics of b_p^T xi_i.
struct OrderData {
  std::size_t k = 0;
  std::vector<std::vector<double>> values;       // values[p][i] = b_p^T xi_i
  std::vector<std::vector<std::size_t>> order;   // ascending permutation per row
  std::vector<double> q;                         // (k+1)-th smallest per row
  std::vector<std::vector<std::size_t>> below;   // {i : values[p][i] < q[p]}, ascending i

  [[nodiscard]] std::size_t total_below() const;
};

[[nodiscard]] OrderData order_data(const ScenarioSet& scen, const SafetySystem& sys,
                                   const AmbiguityConfig& amb);

/// min_p slack_p / ||b_p||_*, without the positive part.
[[nodiscard]] double signed_distance(std::span<const double> x, std::span<const double> xi,
                                     const SafetySystem& sys);
/// Distance from xi to the complement of the safety set.
[[nodiscard]] double distance(std::span<const double> x, std::span<const double> xi,
                              const SafetySystem& sys);
/// kappa * signed_distance. Throws ModelError unless 0 <= kappa <= 1.
[[nodiscard]] double distance_hat(std::span<const double> x, std::span<const double> xi,
                                  const SafetySystem& sys, double kappa);

}  // namespace wdrjcc
