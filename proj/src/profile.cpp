#include "gip/profile.hpp"

#include <cmath>
#include <sstream>

namespace gip {

Profile::Profile(std::function<double(double)> f, double lo, double hi, std::size_t samples)
    : f_(std::move(f)), lo_(lo), hi_(hi), samples_(samples) {
    if (!(hi_ > lo_)) throw ValidationError("Profile: range must satisfy hi > lo");
    if (samples_ < 5) throw ValidationError("Profile: need at least 5 samples");
}

Profile Profile::constant(double value, double lo, double hi, std::size_t samples) {
    return Profile([value](double) { return value; }, lo, hi, samples);
}

Profile Profile::from_samples(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 5)
        throw ValidationError("Profile::from_samples: need >= 5 matching samples");
    const std::size_t n = x.size();
    auto spline = std::make_shared<num::CubicSpline>(std::move(x), std::move(y));
    const double lo = spline->x_min(), hi = spline->x_max();
    return Profile([spline](double t) { return (*spline)(t); }, lo, hi, n);
}

std::vector<double> Profile::values_on(const std::vector<double>& x) const {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = f_(x[i]);
    return v;
}

Profile parse_profile(const std::string& text, double lo, double hi, std::size_t samples) {
    std::istringstream in(text);
    std::string kind;
    in >> kind;
    std::vector<double> p;
    double v;
    while (in >> v) p.push_back(v);

    auto need = [&](std::size_t n) {
        if (p.size() < n)
            throw ValidationError("profile '" + kind + "': expected at least " +
                                  std::to_string(n) + " parameter(s)");
    };

    if (kind == "const") {
        need(1);
        return Profile::constant(p[0], lo, hi, samples);
    }
    if (kind == "linear") {
        need(2);
        return Profile([a = p[0], b = p[1]](double x) { return a + b * x; }, lo, hi, samples);
    }
    if (kind == "poly") {
        need(1);
        return Profile(
            [c = p](double x) {
                double acc = 0.0;
                for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
                return acc;
            },
            lo, hi, samples);
    }
    if (kind == "sin") {
        need(3);
        const double d = p.size() > 3 ? p[3] : 0.0;
        return Profile([a = p[0], b = p[1], c = p[2], d](double x) { return a + b * std::sin(c * x + d); },
                       lo, hi, samples);
    }
    if (kind == "power") {
        need(2);
        return Profile([a = p[0], q = p[1]](double x) { return a * std::pow(x, q); }, lo, hi,
                       samples);
    }
    if (kind == "sqrtpoly") {
        need(1);
        return Profile(
            [c = p](double x) {
                double acc = 0.0;
                for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
                return std::sqrt(acc);
            },
            lo, hi, samples);
    }
    throw ValidationError("unknown profile kind '" + kind + "'");
}

}  // namespace gip
