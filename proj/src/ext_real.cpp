#include "pprox/ext_real.hpp"

#include <cmath>
#include <cstdio>

#include "pprox/errors.hpp"

namespace pprox {

ExtReal::ExtReal(double v) {
  if (std::isnan(v)) throw DomainError("ExtReal: NaN is not an extended real");
  if (v == -std::numeric_limits<double>::infinity())
    throw DomainError("ExtReal: -inf is outside ]-inf, +inf]");
  if (v == std::numeric_limits<double>::infinity()) {
    inf_ = true;
  } else {
    v_ = v;
  }
}

double ExtReal::value() const {
  if (inf_) throw DomainError("ExtReal::value() called on +inf");
  return v_;
}

ExtReal ExtReal::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("ExtReal::scaled requires a positive factor");
  if (inf_) return infinity();
  return ExtReal(c * v_);
}

std::string ExtReal::to_string() const {
  if (inf_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v_);
  return buf;
}

}  // namespace pprox
