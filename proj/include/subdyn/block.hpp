#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "subdyn/alphabet.hpp"
#include "subdyn/error.hpp"

namespace subdyn {

/// theta -> rows x cols block of theta + shift(r, c). Row 0 is the top row.
struct BlockSubstitution2D {
  std::shared_ptr<const TorusBasis> basis;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<TorusPoint> shifts;  ///< row-major

  BlockSubstitution2D(std::shared_ptr<const TorusBasis> b, std::size_t r, std::size_t c,
                      std::vector<TorusPoint> s)
      : basis(std::move(b)), rows(r), cols(c), shifts(std::move(s)) {
    if (!basis) throw DomainError("block substitution needs a basis");
    if (rows == 0 || cols == 0 || shifts.size() != rows * cols)
      throw DomainError("block substitution needs rows*cols shifts");
    for (const auto& sh : shifts)
      if (sh.dim() != basis->dim()) throw DomainError("shift does not match basis");
  }

  const TorusPoint& shift(std::size_t r, std::size_t c) const { return shifts[r * cols + c]; }

  std::vector<TorusPoint> image(const TorusPoint& theta) const {
    std::vector<TorusPoint> out;
    out.reserve(shifts.size());
    for (const auto& s : shifts) out.push_back(theta + s);
    return out;
  }
};

/// Level-n supertile labels. Coefficients share one denominator and are stored
/// flat, basis-dimension values per cell.
class BlockArray2D {
 public:
  BlockArray2D(std::shared_ptr<const TorusBasis> basis, std::size_t rows, std::size_t cols,
               std::int64_t denominator)
      : basis_(std::move(basis)), rows_(rows), cols_(cols), den_(denominator),
        num_(rows * cols * basis_->dim(), 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return basis_->dim(); }
  std::int64_t denominator() const { return den_; }
  const TorusBasis& basis() const { return *basis_; }

  std::int64_t* cell(std::size_t r, std::size_t c) { return &num_[(r * cols_ + c) * dim()]; }
  const std::int64_t* cell(std::size_t r, std::size_t c) const {
    return &num_[(r * cols_ + c) * dim()];
  }

  TorusPoint at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DomainError("cell outside block array");
    const auto* p = cell(r, c);
    std::vector<Rational> coeffs;
    coeffs.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) coeffs.emplace_back(p[i], den_);
    return TorusPoint(std::move(coeffs));
  }

  /// Representative in [0,1) of the label at (r, c).
  double value(std::size_t r, std::size_t c) const {
    const auto* p = cell(r, c);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < dim(); ++i)
      if (p[i] != 0) acc += static_cast<long double>(p[i]) * static_cast<long double>(basis_->generators[i]);
    acc /= static_cast<long double>(den_);
    long double f = acc - std::floor(acc);
    return f >= 1.0L ? 0.0 : static_cast<double>(f);
  }

 private:
  std::shared_ptr<const TorusBasis> basis_;
  std::size_t rows_, cols_;
  std::int64_t den_;
  std::vector<std::int64_t> num_;
};

inline constexpr std::size_t default_block_cell_cap = std::size_t{1} << 24;

/// rho^n(theta), substituting every cell of level n-1 to get level n.
inline BlockArray2D block_supertile(const BlockSubstitution2D& rule, const TorusPoint& theta, int n,
                                    std::size_t cell_cap = default_block_cell_cap) {
  if (n < 0) throw ParameterError("level must be nonnegative");
  if (theta.dim() != rule.basis->dim()) throw DomainError("seed does not match basis");
  const std::size_t d = rule.basis->dim();

  std::int64_t den = 1;
  auto absorb = [&](const TorusPoint& p) {
    for (const auto& c : p.coeffs()) den = std::lcm(den, c.den());
  };
  absorb(theta);
  for (const auto& s : rule.shifts) absorb(s);
  auto numerators = [&](const TorusPoint& p) {
    std::vector<std::int64_t> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = p.coeffs()[i].num() * (den / p.coeffs()[i].den());
    return v;
  };

  std::size_t rows = 1, cols = 1;
  for (int k = 0; k < n; ++k) {
    rows *= rule.rows;
    cols *= rule.cols;
    if (rows * cols > cell_cap)
      throw ResourceError("supertile level " + std::to_string(n) + " exceeds cell cap");
  }

  BlockArray2D cur(rule.basis, 1, 1, den);
  auto seed = numerators(theta);
  std::copy(seed.begin(), seed.end(), cur.cell(0, 0));

  std::vector<std::vector<std::int64_t>> shift_num;
  for (const auto& s : rule.shifts) shift_num.push_back(numerators(s));

  for (int k = 0; k < n; ++k) {
    BlockArray2D next(rule.basis, cur.rows() * rule.rows, cur.cols() * rule.cols, den);
    for (std::size_t r = 0; r < next.rows(); ++r) {
      for (std::size_t c = 0; c < next.cols(); ++c) {
        const auto* parent = cur.cell(r / rule.rows, c / rule.cols);
        const auto& s = shift_num[(r % rule.rows) * rule.cols + (c % rule.cols)];
        auto* out = next.cell(r, c);
        for (std::size_t i = 0; i < d; ++i) out[i] = parent[i] + s[i];
        out[0] = ((out[0] % den) + den) % den;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace subdyn
