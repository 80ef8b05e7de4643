#include "wasnem/reference/tally.hpp"

#include <algorithm>
#include <cmath>

namespace wasnem::reference {

double Tally::mac(double acc, double a, double b) {
  ++counts_[OpClass::mac];
  return acc + a * b;
}
double Tally::add(double a, double b) {
  ++counts_[OpClass::add];
  return a + b;
}
double Tally::sub(double a, double b) {
  ++counts_[OpClass::add];
  return a - b;
}
double Tally::mul(double a, double b) {
  ++counts_[OpClass::mul];
  return a * b;
}
double Tally::div(double a, double b) {
  ++counts_[OpClass::div];
  return a / b;
}
double Tally::max(double a, double b) {
  ++counts_[OpClass::cmp];
  return std::max(a, b);
}
double Tally::exp(double x) {
  ++counts_[OpClass::exp];
  return std::exp(x);
}
double Tally::log(double x) {
  ++counts_[OpClass::log];
  return std::log(x);
}

Tally::cplx Tally::cmul(cplx a, cplx b) {
  const double re = sub(mul(a.real(), b.real()), mul(a.imag(), b.imag()));
  const double im = add(mul(a.real(), b.imag()), mul(a.imag(), b.real()));
  return {re, im};
}
Tally::cplx Tally::cadd(cplx a, cplx b) { return {add(a.real(), b.real()), add(a.imag(), b.imag())}; }
Tally::cplx Tally::csub(cplx a, cplx b) { return {sub(a.real(), b.real()), sub(a.imag(), b.imag())}; }

}  // namespace wasnem::reference
