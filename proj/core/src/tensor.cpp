#include "homtcp/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace homtcp {
namespace {

void check_shape(int order, int dim) {
  if (order < 2) throw std::invalid_argument("tensor order must be >= 2, got " + std::to_string(order));
  if (dim < 1) throw std::invalid_argument("tensor dim must be >= 1, got " + std::to_string(dim));
}

void check_length(const char* op, int dim, std::span<const double> x) {
  if (static_cast<int>(x.size()) != dim) {
    throw DimensionMismatch(std::string(op) + ": vector length " + std::to_string(x.size()) +
                            " does not match tensor dim " + std::to_string(dim));
  }
}

// Contracts the trailing index `times` times: each pass folds consecutive
// blocks of n coefficients against x.
Vector contract_trailing(std::span<const double> coefficients, std::span<const double> x, int times) {
  const std::size_t n = x.size();
  Vector current(coefficients.begin(), coefficients.end());
  for (int t = 0; t < times; ++t) {
    const std::size_t blocks = current.size() / n;
    Vector next(blocks, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
      const double* block = current.data() + b * n;
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += block[k] * x[k];
      next[b] = s;
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace

std::size_t checked_power(int base, int exponent) {
  std::size_t result = 1;
  for (int e = 0; e < exponent; ++e) {
    if (result > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(base)) {
      throw std::length_error("tensor too large");
    }
    result *= static_cast<std::size_t>(base);
  }
  return result;
}

Tensor::Tensor(int order, int dim) : order_(order), dim_(dim) {
  check_shape(order, dim);
  coefficients_.assign(checked_power(dim, order), 0.0);
}

Tensor::Tensor(int order, int dim, std::vector<double> coefficients)
    : order_(order), dim_(dim), coefficients_(std::move(coefficients)) {}

Tensor Tensor::from_dense(int order, int dim, std::vector<double> coefficients) {
  check_shape(order, dim);
  if (coefficients.size() != checked_power(dim, order)) {
    throw std::invalid_argument("from_dense: expected " + std::to_string(checked_power(dim, order)) +
                                " coefficients, got " + std::to_string(coefficients.size()));
  }
  if (!std::all_of(coefficients.begin(), coefficients.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("from_dense: non-finite coefficient");
  }
  return Tensor(order, dim, std::move(coefficients));
}

Tensor Tensor::from_entries(int order, int dim, std::span<const TensorEntry> entries) {
  Tensor t(order, dim);
  std::vector<bool> seen(t.size(), false);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& entry = entries[e];
    const std::string where = "entry " + std::to_string(e + 1);
    if (static_cast<int>(entry.index.size()) != order) {
      throw std::invalid_argument(where + ": index tuple has length " + std::to_string(entry.index.size()) +
                                  ", expected " + std::to_string(order));
    }
    std::size_t flat = 0;
    for (int i : entry.index) {
      if (i < 1 || i > dim) {
        throw std::out_of_range(where + ": index " + std::to_string(i) + " out of range 1.." +
                                std::to_string(dim));
      }
      flat = flat * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i - 1);
    }
    if (!std::isfinite(entry.value)) throw std::invalid_argument(where + ": non-finite value");
    if (seen[flat]) throw std::invalid_argument(where + ": duplicate index tuple");
    seen[flat] = true;
    t.coefficients_[flat] = entry.value;
  }
  return t;
}

Tensor make_tensor(int order, int dim, std::span<const TensorEntry> entries) {
  return Tensor::from_entries(order, dim, entries);
}

double Tensor::at(std::span<const int> one_based) const {
  if (static_cast<int>(one_based.size()) != order_) {
    throw std::invalid_argument("Tensor::at: index tuple length mismatch");
  }
  std::size_t flat = 0;
  for (int i : one_based) {
    if (i < 1 || i > dim_) throw std::out_of_range("Tensor::at: index out of range");
    flat = flat * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i - 1);
  }
  return coefficients_[flat];
}

std::vector<TensorEntry> Tensor::nonzero_entries() const {
  std::vector<TensorEntry> out;
  std::vector<int> index(static_cast<std::size_t>(order_));
  for (std::size_t flat = 0; flat < coefficients_.size(); ++flat) {
    if (coefficients_[flat] == 0.0) continue;
    std::size_t rest = flat;
    for (int p = order_ - 1; p >= 0; --p) {
      index[p] = static_cast<int>(rest % static_cast<std::size_t>(dim_)) + 1;
      rest /= static_cast<std::size_t>(dim_);
    }
    out.push_back({index, coefficients_[flat]});
  }
  return out;
}

SymmetrizedTensor symmetrize(const Tensor& a) {
  const int m = a.order();
  const std::size_t n = static_cast<std::size_t>(a.dim());
  const auto src = a.coefficients();
  std::vector<double> out(src.size(), 0.0);

  // Every one of the (m-1)! position permutations, duplicates included.
  std::vector<int> positions(static_cast<std::size_t>(m - 1));
  std::iota(positions.begin(), positions.end(), 1);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(positions);
  } while (std::next_permutation(positions.begin(), positions.end()));

  // Each coefficient is computed from the sorted trailing tuple, so every
  // member of a permutation class gets bitwise the same value. The running
  // mean returns a repeated value exactly.
  std::vector<std::size_t> digits(static_cast<std::size_t>(m));
  for (std::size_t flat = 0; flat < src.size(); ++flat) {
    std::size_t rest = flat;
    for (int p = m - 1; p >= 0; --p) {
      digits[p] = rest % n;
      rest /= n;
    }
    std::sort(digits.begin() + 1, digits.end());
    double mean = 0.0;
    double count = 0.0;
    for (const auto& perm : perms) {
      std::size_t source = digits[0];
      for (int p : perm) source = source * n + digits[p];
      count += 1.0;
      mean += (src[source] - mean) / count;
    }
    out[flat] = mean;
  }
  return SymmetrizedTensor(Tensor::from_dense(m, a.dim(), std::move(out)));
}

double contract_to_scalar(const Tensor& a, std::span<const double> x) {
  check_length("contract_to_scalar", a.dim(), x);
  return contract_trailing(a.coefficients(), x, a.order()).front();
}

Vector contract_to_vector(const Tensor& a, std::span<const double> x) {
  check_length("contract_to_vector", a.dim(), x);
  return contract_trailing(a.coefficients(), x, a.order() - 1);
}

Matrix contract_to_matrix(const Tensor& a, std::span<const double> x) {
  check_length("contract_to_matrix", a.dim(), x);
  const Vector flat = contract_trailing(a.coefficients(), x, a.order() - 2);
  const int n = a.dim();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = flat[static_cast<std::size_t>(i * n + j)];
  return m;
}

Matrix jacobian_of_map(const Tensor& a, const SymmetrizedTensor& ahat, std::span<const double> x) {
  if (a.order() != ahat.order() || a.dim() != ahat.dim()) {
    throw DimensionMismatch("jacobian_of_map: symmetrized tensor does not match source");
  }
  check_length("jacobian_of_map", a.dim(), x);
  return static_cast<double>(a.order() - 1) * contract_to_matrix(ahat, x);
}

Tensor second_level_contraction(const SymmetrizedTensor& ahat, std::span<const double> x) {
  check_length("second_level_contraction", ahat.dim(), x);
  const int m = ahat.order();
  if (m == 2) return Tensor(3, ahat.dim());
  return Tensor::from_dense(3, ahat.dim(), contract_trailing(ahat.tensor().coefficients(), x, m - 3));
}

}  // namespace homtcp
