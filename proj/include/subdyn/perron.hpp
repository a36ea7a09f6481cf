#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "subdyn/error.hpp"
#include "subdyn/substitution.hpp"

namespace subdyn {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Entry (i,j) counts letter i in rho(j); letters give the index order.
struct SubstitutionMatrix {
  IntMatrix counts;
  std::vector<Letter> letters;

  Eigen::Index dim() const { return counts.rows(); }
};

inline SubstitutionMatrix substitution_matrix(const Substitution& rho) {
  auto letters = rho.letters();
  if (!letters) throw DomainError("substitution matrix needs a finite or truncated alphabet");
  const auto n = static_cast<Eigen::Index>(letters->size());
  SubstitutionMatrix m{IntMatrix::Zero(n, n), *letters};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const auto& b : rho.image((*letters)[j])) {
      auto it = std::find(letters->begin(), letters->end(), b);
      if (it == letters->end()) throw DomainError("image letter outside enumerated alphabet");
      ++m.counts(it - letters->begin(), j);
    }
  }
  return m;
}

struct Primitivity {
  bool primitive = false;
  std::optional<int> power;  ///< least n with M^n > 0
};

/// Searches n up to Wielandt's bound (d-1)^2 + 1 on the zero pattern.
inline Primitivity is_primitive(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw PreconditionError("square nonempty matrix required");
  if ((m.array() < 0).any()) throw PreconditionError("nonnegative matrix required");
  const auto d = m.rows();
  using Pattern = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
  Pattern base = (m.array() > 0).cast<std::uint8_t>();
  Pattern p = base;
  const int bound = static_cast<int>((d - 1) * (d - 1) + 1);
  for (int n = 1; n <= bound; ++n) {
    if ((p.array() > 0).all()) return {true, n};
    Pattern next = Pattern::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index k = 0; k < d; ++k)
        if (p(i, k))
          for (Eigen::Index j = 0; j < d; ++j)
            if (base(k, j)) next(i, j) = 1;
    p = std::move(next);
  }
  return {false, std::nullopt};
}

enum class PvClass { pisot, non_pisot, indeterminate };

inline const char* to_string(PvClass c) {
  switch (c) {
    case PvClass::pisot: return "PV";
    case PvClass::non_pisot: return "non-PV";
    case PvClass::indeterminate: return "indeterminate";
  }
  return "?";
}

struct PvResult {
  PvClass pv = PvClass::indeterminate;
  double second_modulus = 0.0;
};

inline constexpr double pv_band = 1e-9;

enum class LengthNormalization { last_entry, first_entry };

struct PerronData {
  double lambda = 0.0;
  Eigen::VectorXd length;     ///< left PF eigenvector L
  Eigen::VectorXd frequency;  ///< right PF eigenvector R, sums to 1
  double second_modulus = 0.0;
  PvClass pv = PvClass::indeterminate;
  bool pv_flag() const { return pv == PvClass::pisot; }
};

/// All eigenvalues of a small dense matrix.
inline Eigen::VectorXcd spectrum(const IntMatrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m.cast<double>(), false);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigenvalue computation failed");
  return es.eigenvalues();
}

namespace detail {

inline Eigen::Index pf_index(const Eigen::VectorXcd& ev) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (ev[i].real() > ev[best].real()) best = i;
  return best;
}

inline double second_modulus(const Eigen::VectorXcd& ev, Eigen::Index pf) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (i != pf) s = std::max(s, std::abs(ev[i]));
  return s;
}

inline PvClass classify(double second) {
  if (std::abs(second - 1.0) <= pv_band) return PvClass::indeterminate;
  return second < 1.0 ? PvClass::pisot : PvClass::non_pisot;
}

/// Positive null vector of (A - lambda I), refined by inverse iteration.
inline Eigen::VectorXd positive_eigenvector(const Eigen::MatrixXd& a, double lambda) {
  const auto n = a.rows();
  Eigen::MatrixXd shifted = a - (lambda * (1.0 + 1e-13) + 1e-14) * Eigen::MatrixXd::Identity(n, n);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(shifted);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  for (int it = 0; it < 6; ++it) {
    v = lu.solve(v);
    v /= v.cwiseAbs().maxCoeff();
  }
  if (v.sum() < 0) v = -v;
  return v;
}

}  // namespace detail

inline PvResult pv_classify(const IntMatrix& m) {
  if (!is_primitive(m).primitive) throw PreconditionError("pv_classify needs a primitive matrix");
  auto ev = spectrum(m);
  auto pf = detail::pf_index(ev);
  double second = detail::second_modulus(ev, pf);
  return {detail::classify(second), second};
}

inline PerronData perron_data(const IntMatrix& m,
                              LengthNormalization norm = LengthNormalization::last_entry) {
  if (!is_primitive(m).primitive) throw PreconditionError("perron_data needs a primitive matrix");
  auto ev = spectrum(m);
  auto pf = detail::pf_index(ev);
  PerronData out;
  out.lambda = ev[pf].real();
  out.second_modulus = detail::second_modulus(ev, pf);
  out.pv = detail::classify(out.second_modulus);

  Eigen::MatrixXd a = m.cast<double>();
  Eigen::VectorXd r = detail::positive_eigenvector(a, out.lambda);
  Eigen::VectorXd l = detail::positive_eigenvector(a.transpose(), out.lambda);
  if ((r.array() <= 0).any() || (l.array() <= 0).any())
    throw ConvergenceError("Perron eigenvector is not strictly positive");
  out.frequency = r / r.sum();
  out.length = l / (norm == LengthNormalization::last_entry ? l[l.size() - 1] : l[0]);

  double resid = (a * out.frequency - out.lambda * out.frequency).cwiseAbs().maxCoeff() +
                 (a.transpose() * out.length - out.lambda * out.length).cwiseAbs().maxCoeff() /
                     out.length.cwiseAbs().maxCoeff();
  if (resid > 1e-10 * std::max(1.0, out.lambda))
    throw ConvergenceError("Perron eigenvector residual " + std::to_string(resid));
  return out;
}

struct PowerIterationResult {
  double lambda = 0.0;
  Eigen::VectorXd vector;  ///< normalised to sum 1
  int iterations = 0;
  bool converged = false;
};

/// Plain power iteration on a nonnegative matrix, started from the all-ones vector.
inline PowerIterationResult power_iteration(const IntMatrix& m, double tol = 1e-13,
                                            int max_iter = 100000) {
  Eigen::MatrixXd a = m.cast<double>();
  // A + I shares the Perron vector and its dominant eigenvalue is simple.
  Eigen::MatrixXd b = a + Eigen::MatrixXd::Identity(a.rows(), a.cols());
  PowerIterationResult res;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows()) / static_cast<double>(a.rows());
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd w = b * v;
    w /= w.sum();
    double delta = (w - v).cwiseAbs().maxCoeff();
    v = std::move(w);
    res.iterations = it;
    if (delta < tol) {
      res.converged = true;
      break;
    }
  }
  res.vector = v;
  res.lambda = (a * v).sum() / v.sum();
  return res;
}

/// Point density 1 / sum_i R_i L_i of the left-endpoint point set.
inline double tile_density(const Eigen::VectorXd& frequency, const Eigen::VectorXd& length) {
  if (frequency.size() != length.size()) throw PreconditionError("vector sizes differ");
  return 1.0 / frequency.dot(length);
}

using LengthFunction = std::function<double(const Letter&)>;

/// Checks sum_{b in rho(a)} L(b) = lambda L(a), relative to max(1, lambda L(a)).
inline bool check_length_eigen(const Substitution& rho, const LengthFunction& length, double lambda,
                               const std::vector<Letter>& sample, double tol) {
  for (const auto& a : sample) {
    double lhs = 0.0;
    for (const auto& b : rho.image(a)) lhs += length(b);
    double rhs = lambda * length(a);
    if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(rhs))) return false;
  }
  return true;
}

/// Length function read off a PerronData vector, indexed like the matrix letters.
inline LengthFunction length_from(const SubstitutionMatrix& m, const PerronData& pf) {
  return [letters = m.letters, length = pf.length](const Letter& l) {
    auto it = std::find(letters.begin(), letters.end(), l);
    if (it == letters.end()) throw DomainError("letter has no tile length");
    return length[it - letters.begin()];
  };
}

}  // namespace subdyn
