#pragma once

#include <complex>

#include "wasnem/ops.hpp"

// Arithmetic that counts itself. The reference kernels route every
// data-dependent operation through a Tally so that their op counts come from
// execution, not from formulas.

namespace wasnem::reference {

class Tally {
 public:
  using cplx = std::complex<double>;

  double mac(double acc, double a, double b);
  double add(double a, double b);
  double sub(double a, double b);  // counted as add
  double mul(double a, double b);
  double div(double a, double b);
  double max(double a, double b);  // one cmp
  double exp(double x);
  double log(double x);

  // 4 mul + 2 add
  cplx cmul(cplx a, cplx b);
  // 2 add each
  cplx cadd(cplx a, cplx b);
  cplx csub(cplx a, cplx b);

  const OpCounts& counts() const { return counts_; }

 private:
  OpCounts counts_{};
};

}  // namespace wasnem::reference
