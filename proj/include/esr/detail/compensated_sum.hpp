#pragma once

#include <complex>

namespace esr::detail {

// Compensated summation with Knuth's branch-free TwoSum error term.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    const double vv = t - sum_;
    comp_ += (sum_ - (t - vv)) + (v - vv);
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
  CompensatedSum re_;
  CompensatedSum im_;
};

} // namespace esr::detail
