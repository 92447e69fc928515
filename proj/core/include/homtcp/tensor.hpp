#pragma once

// Dense real tensors of order m and dimension n, stored row-major with the
// last index fastest. Index tuples are 1-based at the public boundary
// (TensorEntry, Tensor::at) and 0-based everywhere else.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "homtcp/linalg.hpp"

namespace homtcp {

/// A single nonzero coefficient with a 1-based index tuple.
struct TensorEntry {
  std::vector<int> index;
  double value = 0.0;

  friend bool operator==(const TensorEntry&, const TensorEntry&) = default;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Tensor {
 public:
  /// Zero tensor. Requires order >= 2 and dim >= 1.
  Tensor(int order, int dim);

  /// Dense tensor with the listed entries set and all others zero. Rejects
  /// out-of-range indices, duplicate index tuples and non-finite values.
  static Tensor from_entries(int order, int dim, std::span<const TensorEntry> entries);
  static Tensor from_entries(int order, int dim, std::initializer_list<TensorEntry> entries) {
    return from_entries(order, dim, std::span<const TensorEntry>(entries.begin(), entries.size()));
  }
  /// Takes ownership of n^m coefficients in row-major order.
  static Tensor from_dense(int order, int dim, std::vector<double> coefficients);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return coefficients_.size(); }

  /// Coefficient at a 1-based index tuple.
  double at(std::span<const int> one_based) const;
  double at(std::initializer_list<int> one_based) const {
    return at(std::span<const int>(one_based.begin(), one_based.size()));
  }

  std::span<const double> coefficients() const { return coefficients_; }

  /// Nonzero coefficients in lexicographic index order, 1-based.
  std::vector<TensorEntry> nonzero_entries() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Tensor(int order, int dim, std::vector<double> coefficients);

  int order_;
  int dim_;
  std::vector<double> coefficients_;
};

std::size_t checked_power(int base, int exponent);

/// Free-function spelling of Tensor::from_entries.
Tensor make_tensor(int order, int dim, std::span<const TensorEntry> entries);

/// A tensor averaged over every permutation of its trailing m-1 indices.
/// Only symmetrize() produces one.
class SymmetrizedTensor {
 public:
  const Tensor& tensor() const { return tensor_; }
  int order() const { return tensor_.order(); }
  int dim() const { return tensor_.dim(); }
  double at(std::initializer_list<int> one_based) const { return tensor_.at(one_based); }

 private:
  friend SymmetrizedTensor symmetrize(const Tensor& a);
  explicit SymmetrizedTensor(Tensor t) : tensor_(std::move(t)) {}

  Tensor tensor_;
};

SymmetrizedTensor symmetrize(const Tensor& a);

/// A x^m = sum a_{i1..im} x_{i1} ... x_{im}.
double contract_to_scalar(const Tensor& a, std::span<const double> x);

/// (A x^{m-1})_i = sum a_{i i2..im} x_{i2} ... x_{im}.
Vector contract_to_vector(const Tensor& a, std::span<const double> x);
inline Vector contract_to_vector(const SymmetrizedTensor& a, std::span<const double> x) {
  return contract_to_vector(a.tensor(), x);
}

/// (A x^{m-2})_{ij} = sum a_{i j i3..im} x_{i3} ... x_{im}. For m = 2 this is A itself.
Matrix contract_to_matrix(const Tensor& a, std::span<const double> x);
inline Matrix contract_to_matrix(const SymmetrizedTensor& a, std::span<const double> x) {
  return contract_to_matrix(a.tensor(), x);
}

/// D_x (A x^{m-1}) = (m-1) Ahat x^{m-2}.
Matrix jacobian_of_map(const Tensor& a, const SymmetrizedTensor& ahat, std::span<const double> x);

/// Order-3 array with entry (j,i,k) = sum Ahat_{j i k i4..im} x_{i4} ... x_{im}, so
/// that d(Ahat x^{m-2})_{ji} / dx_k = (m-2) * entry(j,i,k). At m = 3 the entries
/// are Ahat_{jik} (empty product); at m = 2 the array is zero.
Tensor second_level_contraction(const SymmetrizedTensor& ahat, std::span<const double> x);

}  // namespace homtcp
