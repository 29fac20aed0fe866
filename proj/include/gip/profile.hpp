#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gip/numerics.hpp"
#include "gip/types.hpp"

namespace gip {

// A scalar function of one variable on [lo, hi], either closed-form or built
// from samples (cubic-spline backed). Carries the grid resolution used when
// an operation needs to sample it.
class Profile {
  public:
    Profile() = default;
    Profile(std::function<double(double)> f, double lo, double hi, std::size_t samples = 1025);

    static Profile constant(double value, double lo, double hi, std::size_t samples = 1025);
    static Profile from_samples(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const { return f_(x); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t samples() const { return samples_; }

    std::vector<double> grid() const { return num::linspace(lo_, hi_, samples_); }
    std::vector<double> values_on(const std::vector<double>& x) const;

    bool valid() const { return static_cast<bool>(f_); }

  private:
    std::function<double(double)> f_;
    double lo_ = 0.0, hi_ = 1.0;
    std::size_t samples_ = 1025;
};

// Parses the CLI profile mini-language:
//   const c | linear a b | poly c0 c1 ... | sin a b c [d] | power a p
// meaning c, a+b*x, sum ck x^k, a + b*sin(c*x + d), a*x^p.
Profile parse_profile(const std::string& text, double lo, double hi, std::size_t samples);

}  // namespace gip
