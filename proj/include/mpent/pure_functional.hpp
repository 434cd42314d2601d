#pragma once

#include <vector>

#include "mpent/measure_kind.hpp"

namespace mpent {

/// Evaluates a pure-state measure on raw (possibly unnormalized) amplitude
/// vectors, together with its Wirtinger gradient.
///
/// For an unnormalized w with p = |w|^2 the functional is the degree-2
/// homogeneous extension g(w) = p * E(w / |w|), so that summing g over the
/// rows of an ensemble matrix gives the ensemble's average measure. The
/// gradient Gamma satisfies dg = 2 Re <Gamma, dw>.
///
/// Every supported kind is a function of spectral sums t_X = Tr f(rho^X) over
/// one marginal (bipartite scope) or the three single-party marginals
/// (tripartite scope).
class PureFunctional {
 public:
  PureFunctional(const MeasureKind& kind, const Scope& scope, const Dims& dims,
                 BipartiteForm form = BipartiteForm::Standard);

  int dim() const { return dim_; }

  double value(const cplx* w) const;
  /// Writes Gamma (length dim()) and returns g(w).
  double value_and_gradient(const cplx* w, cplx* gradient) const;

 private:
  enum class Spectral { Entropy, Square, Power, Sqrt };

  struct Marginal {
    std::vector<int> map;  // permuted index -> original index, marginal party first
    int rows;              // marginal dimension
    int cols;              // dimension of the rest
  };

  double spectral_f(double x) const;
  double spectral_df(double x) const;
  double combine(const std::vector<double>& t, std::vector<double>* dphi) const;

  MeasureKind kind_;
  BipartiteForm form_;
  bool tripartite_;
  Spectral spectral_;
  double exponent_ = 2.0;
  int dim_;
  std::vector<Marginal> marginals_;
};

}  // namespace mpent
